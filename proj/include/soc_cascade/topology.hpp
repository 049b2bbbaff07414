#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "soc_cascade/graph.hpp"

namespace soc_cascade {

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::size_t iterations)
      : std::runtime_error(what + " did not converge after " + std::to_string(iterations) +
                           " iterations"),
        iterations_(iterations) {}
  std::size_t iterations() const { return iterations_; }

 private:
  std::size_t iterations_;
};

// ---------------------------------------------------------------------------
// Shortest paths
// ---------------------------------------------------------------------------

struct PathStats {
  double average_path_length = 0.0;  // mean over unordered pairs
  std::uint32_t diameter = 0;
};

/// Requires a connected network (pass the LCC).
PathStats path_stats(const SupplyNetwork& net);

/// (n - 1) / sum of distances. Requires a connected network.
std::vector<double> closeness(const SupplyNetwork& net);

/// Unnormalized shortest-path betweenness, each unordered pair counted
/// once. Brandes accumulation, parallel over sources with a fixed-block
/// reduction so results do not depend on the worker count.
std::vector<double> betweenness(const SupplyNetwork& net);

// ---------------------------------------------------------------------------
// Local structure and spectral scores
// ---------------------------------------------------------------------------

struct LocalClustering {
  double clustering = 0.0;  // 0 for degree <= 1
  std::uint64_t triangles = 0;
};

std::vector<LocalClustering> local_clustering(const SupplyNetwork& net);

struct EigenvectorOptions {
  double tolerance = 1e-10;  // on the change of the unit-norm iterate
  std::size_t max_iterations = 1000;
};

/// Principal adjacency eigenvector, unit Euclidean norm, non-negative.
/// Iterates with A + I, which shares A's eigenvectors and does not
/// oscillate on bipartite graphs. Throws ConvergenceError.
std::vector<double> eigenvector_centrality(const SupplyNetwork& net,
                                           const EigenvectorOptions& options = {});

/// Each undirected edge acts as two arcs; isolated firms spread their mass
/// uniformly. Iterates until the L1 change drops below 1e-12.
std::vector<double> pagerank(const SupplyNetwork& net, double damping = 0.85);

// ---------------------------------------------------------------------------
// Communities
// ---------------------------------------------------------------------------

struct Partition {
  std::vector<std::uint32_t> community;  // dense ids 0..count-1
  std::uint32_t count = 0;

  /// Relabels arbitrary ids densely in order of first appearance.
  static Partition from_labels(const std::vector<std::uint32_t>& labels);
};

/// Newman modularity Q = (1/2m) sum_ij (A_ij - k_i k_j / 2m) [c_i == c_j].
/// Throws std::invalid_argument on an edgeless graph or a partition that
/// does not cover the network.
double modularity(const SupplyNetwork& net, const Partition& partition);

/// Louvain: local moving and aggregation until no level improves, then a
/// single-node refinement sweep. Networks up to a few thousand firms also
/// get vertex-swap, dissolve and merge polishing and several restarts
/// derived from `seed`; the partition with the highest modularity wins.
/// Deterministic for a given seed.
Partition louvain(const SupplyNetwork& net, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Distributions and correlation
// ---------------------------------------------------------------------------

struct CapitalBin {
  double lower = 0.0;  // inclusive
  double upper = 0.0;  // exclusive
  std::size_t count = 0;
};

struct Distributions {
  std::map<std::size_t, std::size_t> degree;  // degree -> firms
  std::size_t zero_capital = 0;               // firms with capital 0
  std::vector<CapitalBin> capital;            // contiguous bins, min..max occupied
};

/// Capital bins split each base-10 decade into kCapitalBinsPerDecade
/// logarithmically equal bins.
inline constexpr int kCapitalBinsPerDecade = 5;

Distributions degree_and_capital_distribution(const SupplyNetwork& net);

/// Least-squares slope of log10 P(K >= k) against log10 k over the distinct
/// degrees k >= min_degree.
double degree_ccdf_slope(const SupplyNetwork& net, std::size_t min_degree);

struct MetricTable {
  std::vector<std::string> firm;
  std::vector<double> degree;
  std::vector<double> closeness;
  std::vector<double> betweenness;
  std::vector<double> eigenvector;
  std::vector<double> pagerank;
  std::vector<double> clustering;
  std::vector<double> triangles;
  std::vector<double> capital;

  static constexpr std::array<const char*, 8> kColumns = {
      "degree", "closeness", "betweenness", "eigenvector",
      "pagerank", "clustering", "triangles", "capital"};

  const std::vector<double>& column(std::size_t index) const;
  std::size_t size() const { return firm.size(); }
};

/// All columns for a connected network.
MetricTable compute_metrics(const SupplyNetwork& net);

enum class CorrelationKind { kPearson, kSpearman };

struct CorrelationMatrix {
  CorrelationKind kind = CorrelationKind::kPearson;
  std::vector<std::string> names;
  /// Row-major; nullopt where either column is constant.
  std::vector<std::optional<double>> values;

  std::optional<double> at(std::size_t i, std::size_t j) const {
    return values[i * names.size() + j];
  }
};

/// Pearson of two columns; nullopt when either is constant.
std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y);

/// Pearson of average ranks.
std::optional<double> spearman(const std::vector<double>& x, const std::vector<double>& y);

/// Requires at least 3 firms.
CorrelationMatrix metric_correlation(const MetricTable& table, CorrelationKind kind);

}  // namespace soc_cascade
