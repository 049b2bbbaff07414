#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace soc_cascade {

using FirmId = std::uint32_t;
using Edge = std::pair<FirmId, FirmId>;

/// ln(1 + capital); capital is registered capital in ten-thousand CNY.
double log_capital(double registered_capital);

struct Firm {
  FirmId id = 0;
  std::string canonical_name;
  std::vector<std::string> aliases;  // sorted, unique, contains canonical_name
  double registered_capital = 0.0;
  double log_capital = 0.0;
};

/// Construction input for one firm.
struct FirmSpec {
  std::string name;
  double capital = 0.0;
  std::vector<std::string> aliases;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NetworkBuild;

/// Undirected simple graph of firms stored as sorted adjacency arrays.
/// Immutable once built.
class SupplyNetwork {
 public:
  SupplyNetwork() = default;

  /// Edges reference firms by position in `firms`. Duplicate edges are
  /// collapsed and self-loops dropped; both are counted in the result.
  static NetworkBuild from_ids(std::vector<FirmSpec> firms, std::span<const Edge> edges);

  /// Edges reference firms by name (canonical name or alias).
  static NetworkBuild from_edge_list(
      std::vector<FirmSpec> firms,
      std::span<const std::pair<std::string, std::string>> edges);

  std::size_t size() const { return firms_.size(); }
  bool empty() const { return firms_.empty(); }
  std::size_t edge_count() const { return targets_.size() / 2; }

  std::size_t degree(FirmId v) const { return offsets_[v + 1] - offsets_[v]; }

  std::span<const FirmId> neighbors(FirmId v) const {
    return {targets_.data() + offsets_[v], degree(v)};
  }

  /// Position of v's first adjacency slot; per-arc arrays of length
  /// 2 * edge_count() are indexed by adjacency_offset(v) + k.
  std::size_t adjacency_offset(FirmId v) const { return offsets_[v]; }

  bool has_edge(FirmId u, FirmId v) const;

  const Firm& firm(FirmId v) const { return firms_[v]; }
  std::span<const Firm> firms() const { return firms_; }

  std::optional<FirmId> find(std::string_view name) const;

  /// Each undirected edge once, as (u, v) with u < v, in ascending order.
  std::vector<Edge> edges() const;

  std::vector<double> log_capitals() const;

  /// Same structure with new registered capitals.
  SupplyNetwork with_capitals(std::span<const double> capitals) const;

 private:
  std::vector<Firm> firms_;
  std::vector<std::size_t> offsets_{0};
  std::vector<FirmId> targets_;
  std::unordered_map<std::string, FirmId> by_name_;
};

struct NetworkBuild {
  SupplyNetwork network;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicate_edges = 0;
};

/// Component label per firm; labels are numbered in order of each
/// component's smallest FirmId.
std::vector<std::uint32_t> component_labels(const SupplyNetwork& net);

std::size_t component_count(const SupplyNetwork& net);

bool is_connected(const SupplyNetwork& net);

/// Subgraph induced by `keep` (ascending, distinct). Ids are re-densified in
/// the order given.
SupplyNetwork induced_subgraph(const SupplyNetwork& net, std::span<const FirmId> keep);

/// Largest component; ties go to the component holding the smallest FirmId.
SupplyNetwork largest_connected_component(const SupplyNetwork& net);

}  // namespace soc_cascade
