#pragma once

// Single-threaded reference versions of the OpenMP kernels. They share no
// code with the parallel paths beyond the public data types and exist so
// tests and benchmarks can compare the two.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "soc_cascade/graph.hpp"
#include "soc_cascade/rc_idm.hpp"
#include "soc_cascade/rt_idm.hpp"
#include "soc_cascade/topology.hpp"

namespace soc_cascade::serial {

std::vector<std::pair<std::uint32_t, std::uint32_t>> similar_pairs(
    const std::vector<std::u32string>& keys, double threshold);

/// Sum of BFS distances from every firm. Unreachable firms are skipped.
std::vector<std::uint64_t> distance_sums(const SupplyNetwork& net);

PathStats path_stats(const SupplyNetwork& net);
std::vector<double> closeness(const SupplyNetwork& net);
std::vector<double> betweenness(const SupplyNetwork& net);
std::vector<LocalClustering> local_clustering(const SupplyNetwork& net);

RcState rc_step(const RcDynamics& dyn, std::span<const RcState> history);
RtState rt_step(const RtDynamics& dyn, std::span<const RtState> history, std::uint32_t step);

}  // namespace soc_cascade::serial
