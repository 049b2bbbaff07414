#pragma once

// Synthetic networks and capital draws. Every generator uses the xoshiro256**
// stream from rng.hpp, so outputs are identical on every platform.

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "soc_cascade/graph.hpp"

namespace soc_cascade {

struct BarabasiAlbertModel {
  std::size_t n = 0;
  std::size_t m = 1;
};

struct ErdosRenyiModel {
  std::size_t n = 0;
  double p = 0.0;
};

using GraphModel = std::variant<BarabasiAlbertModel, ErdosRenyiModel>;

struct CapitalModel {
  enum class Kind { kPareto, kLognormal, kConstant };
  Kind kind = Kind::kPareto;
  double a = 2.0;   // pareto alpha, lognormal mu, constant value
  double b = 50.0;  // pareto scale, lognormal sigma

  static CapitalModel pareto(double alpha, double scale) { return {Kind::kPareto, alpha, scale}; }
  static CapitalModel lognormal(double mu, double sigma) { return {Kind::kLognormal, mu, sigma}; }
  static CapitalModel constant(double value) { return {Kind::kConstant, value, 0.0}; }

  void validate() const;
};

struct GenSpec {
  GraphModel model;
  CapitalModel capital;
  std::uint64_t rng_seed = 0;
};

/// "ba:<n>:<m>" or "er:<n>:<p>".
GraphModel parse_graph_model(std::string_view text);
std::string to_string(const GraphModel& model);

/// "pareto:<alpha>:<scale>", "lognormal:<mu>:<sigma>" or "constant:<value>".
CapitalModel parse_capital_model(std::string_view text);
std::string to_string(const CapitalModel& model);

/// Preferential attachment grown from an m-clique: C(m, 2) + (n - m) * m
/// edges, always connected. Firms get random 12-letter names that stay far
/// apart under name similarity, and zero capital.
SupplyNetwork barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed);

/// Each unordered pair is an edge with probability p.
SupplyNetwork erdos_renyi(std::size_t n, double p, std::uint64_t seed);

/// n i.i.d. positive capital draws.
std::vector<double> draw_capitals(std::size_t n, const CapitalModel& model, std::uint64_t seed);

SupplyNetwork assign_capital(const SupplyNetwork& net, const CapitalModel& model,
                             std::uint64_t seed);

/// Graph from `spec.rng_seed`, then capitals from a seed derived from it.
SupplyNetwork generate(const GenSpec& spec);

/// Ingest-compatible CSVs: one triplet per edge, one attribute row per firm.
void write_triplets(const SupplyNetwork& net, std::ostream& out);
void write_attributes(const SupplyNetwork& net, std::ostream& out);

}  // namespace soc_cascade
