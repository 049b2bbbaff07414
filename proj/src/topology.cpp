#include "soc_cascade/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "soc_cascade/parallel.hpp"
#include "soc_cascade/rng.hpp"

namespace soc_cascade {

namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

void require_connected(const SupplyNetwork& net, const char* what) {
  if (!is_connected(net)) {
    throw std::invalid_argument(std::string(what) +
                                ": network is disconnected; pass its largest connected component");
  }
}

// BFS distances from `source`; returns (sum of distances, eccentricity).
std::pair<std::uint64_t, std::uint32_t> bfs_sum(const SupplyNetwork& net, FirmId source,
                                                std::vector<std::uint32_t>& dist,
                                                std::vector<FirmId>& queue) {
  std::fill(dist.begin(), dist.end(), kUnreached);
  dist[source] = 0;
  queue.assign(1, source);
  std::uint64_t sum = 0;
  std::uint32_t ecc = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const FirmId v = queue[head];
    for (FirmId w : net.neighbors(v)) {
      if (dist[w] == kUnreached) {
        dist[w] = dist[v] + 1;
        sum += dist[w];
        ecc = std::max(ecc, dist[w]);
        queue.push_back(w);
      }
    }
  }
  return {sum, ecc};
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> all_distance_sums(const SupplyNetwork& net) {
  const auto n = static_cast<std::int64_t>(net.size());
  std::vector<std::pair<std::uint64_t, std::uint32_t>> out(net.size());
#pragma omp parallel
  {
    std::vector<std::uint32_t> dist(net.size());
    std::vector<FirmId> queue;
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t s = 0; s < n; ++s) {
      out[s] = bfs_sum(net, static_cast<FirmId>(s), dist, queue);
    }
  }
  return out;
}

// Brandes dependency accumulation for one source into `acc`.
struct BrandesWorkspace {
  std::vector<std::int64_t> dist;
  std::vector<double> sigma;
  std::vector<double> delta;
  std::vector<FirmId> order;

  explicit BrandesWorkspace(std::size_t n) : dist(n), sigma(n), delta(n) { order.reserve(n); }

  void accumulate(const SupplyNetwork& net, FirmId s, std::vector<double>& acc) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    order.clear();
    dist[s] = 0;
    sigma[s] = 1.0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
      const FirmId v = order[head];
      for (FirmId w : net.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          order.push_back(w);
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
    for (std::size_t k = order.size(); k-- > 1;) {
      const FirmId w = order[k];
      for (FirmId v : net.neighbors(w)) {
        if (dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      }
      acc[w] += delta[w];
    }
  }
};

}  // namespace

PathStats path_stats(const SupplyNetwork& net) {
  require_connected(net, "path_stats");
  const std::size_t n = net.size();
  if (n < 2) return {0.0, 0};
  const auto sums = all_distance_sums(net);
  std::uint64_t total = 0;
  std::uint32_t diameter = 0;
  for (const auto& [sum, ecc] : sums) {
    total += sum;
    diameter = std::max(diameter, ecc);
  }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
  // total counts each unordered pair twice.
  return {static_cast<double>(total) / pairs, diameter};
}

std::vector<double> closeness(const SupplyNetwork& net) {
  require_connected(net, "closeness");
  const std::size_t n = net.size();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  const auto sums = all_distance_sums(net);
  for (std::size_t v = 0; v < n; ++v) {
    out[v] = static_cast<double>(n - 1) / static_cast<double>(sums[v].first);
  }
  return out;
}

std::vector<double> betweenness(const SupplyNetwork& net) {
  const std::size_t n = net.size();
  const auto blocks = BlockPartition::of(n);
  std::vector<std::vector<double>> partial(blocks.count);
  const auto block_count = static_cast<std::int64_t>(blocks.count);

#pragma omp parallel
  {
    BrandesWorkspace ws(n);
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t b = 0; b < block_count; ++b) {
      auto& acc = partial[b];
      acc.assign(n, 0.0);
      for (std::size_t s = blocks.begin(b); s < blocks.end(b, n); ++s) {
        ws.accumulate(net, static_cast<FirmId>(s), acc);
      }
    }
  }

  std::vector<double> out(n, 0.0);
  for (const auto& acc : partial) {
    for (std::size_t v = 0; v < n; ++v) out[v] += acc[v];
  }
  for (double& x : out) x *= 0.5;
  return out;
}

std::vector<LocalClustering> local_clustering(const SupplyNetwork& net) {
  const auto n = static_cast<std::int64_t>(net.size());
  std::vector<LocalClustering> out(net.size());
#pragma omp parallel for schedule(dynamic, 32)
  for (std::int64_t vi = 0; vi < n; ++vi) {
    const auto v = static_cast<FirmId>(vi);
    const auto nv = net.neighbors(v);
    std::uint64_t closed = 0;
    for (FirmId u : nv) {
      const auto nu = net.neighbors(u);
      auto a = nv.begin();
      auto b = nu.begin();
      while (a != nv.end() && b != nu.end()) {
        if (*a < *b) {
          ++a;
        } else if (*b < *a) {
          ++b;
        } else {
          ++closed;
          ++a;
          ++b;
        }
      }
    }
    const std::uint64_t tri = closed / 2;
    const double d = static_cast<double>(nv.size());
    out[v].triangles = tri;
    out[v].clustering = nv.size() < 2 ? 0.0 : 2.0 * static_cast<double>(tri) / (d * (d - 1.0));
  }
  return out;
}

std::vector<double> eigenvector_centrality(const SupplyNetwork& net,
                                           const EigenvectorOptions& options) {
  const std::size_t n = net.size();
  if (n == 0) return {};
  require_connected(net, "eigenvector_centrality");
  const auto count = static_cast<std::int64_t>(n);
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> y(n);
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
#pragma omp parallel for schedule(static)
    for (std::int64_t v = 0; v < count; ++v) {
      double sum = x[v];
      for (FirmId u : net.neighbors(static_cast<FirmId>(v))) sum += x[u];
      y[v] = sum;
    }
    double norm = 0.0;
    for (double value : y) norm += value * value;
    norm = std::sqrt(norm);
    double change = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      y[v] /= norm;
      change += (y[v] - x[v]) * (y[v] - x[v]);
    }
    x.swap(y);
    if (std::sqrt(change) < options.tolerance) return x;
  }
  throw ConvergenceError("eigenvector_centrality", options.max_iterations);
}

std::vector<double> pagerank(const SupplyNetwork& net, double damping) {
  if (!(damping > 0.0 && damping < 1.0)) {
    throw std::invalid_argument("pagerank: damping must lie in (0, 1)");
  }
  constexpr double kResidual = 1e-12;
  constexpr std::size_t kMaxIterations = 100000;
  const std::size_t n = net.size();
  if (n == 0) return {};
  const auto count = static_cast<std::int64_t>(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> x(n, inv_n);
  std::vector<double> share(n);
  std::vector<double> y(n);
  for (std::size_t it = 1; it <= kMaxIterations; ++it) {
    double dangling = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t d = net.degree(static_cast<FirmId>(v));
      if (d == 0) {
        dangling += x[v];
        share[v] = 0.0;
      } else {
        share[v] = x[v] / static_cast<double>(d);
      }
    }
    const double base = (1.0 - damping) * inv_n + damping * dangling * inv_n;
#pragma omp parallel for schedule(static)
    for (std::int64_t v = 0; v < count; ++v) {
      double sum = 0.0;
      for (FirmId u : net.neighbors(static_cast<FirmId>(v))) sum += share[u];
      y[v] = base + damping * sum;
    }
    double residual = 0.0;
    for (std::size_t v = 0; v < n; ++v) residual += std::abs(y[v] - x[v]);
    x.swap(y);
    if (residual < kResidual) {
      const double total = std::accumulate(x.begin(), x.end(), 0.0);
      for (double& value : x) value /= total;
      return x;
    }
  }
  throw ConvergenceError("pagerank", kMaxIterations);
}

// ---------------------------------------------------------------------------
// Communities
// ---------------------------------------------------------------------------

Partition Partition::from_labels(const std::vector<std::uint32_t>& labels) {
  Partition p;
  p.community.resize(labels.size());
  std::map<std::uint32_t, std::uint32_t> dense;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = dense.emplace(labels[i], static_cast<std::uint32_t>(dense.size()));
    p.community[i] = it->second;
  }
  p.count = static_cast<std::uint32_t>(dense.size());
  return p;
}

double modularity(const SupplyNetwork& net, const Partition& partition) {
  if (partition.community.size() != net.size()) {
    throw std::invalid_argument("modularity: partition does not cover the network");
  }
  const std::size_t m = net.edge_count();
  if (m == 0) throw std::invalid_argument("modularity: network has no edges");
  std::uint32_t count = 0;
  for (auto c : partition.community) count = std::max(count, c + 1);
  std::vector<double> internal(count, 0.0);
  std::vector<double> degree_sum(count, 0.0);
  for (FirmId u = 0; u < net.size(); ++u) {
    const auto cu = partition.community[u];
    degree_sum[cu] += static_cast<double>(net.degree(u));
    for (FirmId v : net.neighbors(u)) {
      if (partition.community[v] == cu) internal[cu] += 1.0;  // each edge seen twice
    }
  }
  const double two_m = 2.0 * static_cast<double>(m);
  double q = 0.0;
  for (std::uint32_t c = 0; c < count; ++c) {
    const double share = degree_sum[c] / two_m;
    q += internal[c] / two_m - share * share;
  }
  return q;
}

namespace {

// Weighted graph for the aggregation levels. `loop` holds twice the weight
// of edges folded inside a node so that degree sums stay at 2m.
struct LevelGraph {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;
  std::vector<double> loop;
  std::vector<double> degree;
  double two_m = 0.0;

  std::size_t size() const { return adj.size(); }

  static LevelGraph from(const SupplyNetwork& net) {
    LevelGraph g;
    g.adj.resize(net.size());
    g.loop.assign(net.size(), 0.0);
    g.degree.assign(net.size(), 0.0);
    for (FirmId u = 0; u < net.size(); ++u) {
      for (FirmId v : net.neighbors(u)) g.adj[u].emplace_back(v, 1.0);
      g.degree[u] = static_cast<double>(net.degree(u));
    }
    g.two_m = 2.0 * static_cast<double>(net.edge_count());
    return g;
  }

  LevelGraph aggregate(const std::vector<std::uint32_t>& comm, std::uint32_t count) const {
    LevelGraph g;
    g.adj.resize(count);
    g.loop.assign(count, 0.0);
    g.degree.assign(count, 0.0);
    g.two_m = two_m;
    std::vector<std::map<std::uint32_t, double>> links(count);
    for (std::uint32_t u = 0; u < size(); ++u) {
      const auto cu = comm[u];
      g.loop[cu] += loop[u];
      g.degree[cu] += degree[u];
      for (const auto& [v, w] : adj[u]) {
        if (comm[v] == cu) {
          g.loop[cu] += w;  // seen from both ends: adds 2w per edge
        } else {
          links[cu][comm[v]] += w;
        }
      }
    }
    for (std::uint32_t c = 0; c < count; ++c) {
      g.adj[c].assign(links[c].begin(), links[c].end());
    }
    return g;
  }
};

// Local-moving phase; returns true if any node changed community.
bool move_nodes(const LevelGraph& g, std::vector<std::uint32_t>& comm, Rng& rng) {
  constexpr double kMinGain = 1e-10;
  const std::size_t n = g.size();
  std::vector<double> total(n, 0.0);
  for (std::uint32_t i = 0; i < n; ++i) total[comm[i]] += g.degree[i];

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(order[i - 1], order[rng.below(i)]);
  }

  std::vector<double> link(n, 0.0);
  std::vector<std::uint32_t> touched;
  bool any = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::uint32_t i : order) {
      const std::uint32_t home = comm[i];
      const double k = g.degree[i];
      touched.clear();
      for (const auto& [j, w] : g.adj[i]) {
        const auto c = comm[j];
        if (link[c] == 0.0) touched.push_back(c);
        link[c] += w;
      }
      total[home] -= k;
      const double stay = link[home] - total[home] * k / g.two_m;
      std::sort(touched.begin(), touched.end());
      std::uint32_t best = home;
      double best_gain = -std::numeric_limits<double>::infinity();
      for (std::uint32_t c : touched) {
        if (c == home) continue;
        const double gain = link[c] - total[c] * k / g.two_m;
        if (gain > best_gain) {  // ascending c: ties keep the lower id
          best_gain = gain;
          best = c;
        }
      }
      if (best == home || !(best_gain > stay + kMinGain)) best = home;
      total[best] += k;
      if (best != home) {
        comm[i] = best;
        moved = true;
        any = true;
      }
      for (std::uint32_t c : touched) link[c] = 0.0;
    }
  }
  return any;
}

constexpr std::uint64_t kLouvainRestarts = 16;
// The Kernighan-Lin and dissolve sweeps cost O(n^2) per round, so they and
// the extra restarts only run on networks up to this size.
constexpr std::size_t kPolishMaxNodes = 2000;

std::uint32_t compact(std::vector<std::uint32_t>& comm) {
  std::vector<std::uint32_t> remap(comm.size(), kUnreached);
  std::uint32_t next = 0;
  for (auto& c : comm) {
    if (remap[c] == kUnreached) remap[c] = next++;
    c = remap[c];
  }
  return next;
}


// Kernighan-Lin style sweep over the original nodes. Each round moves every
// node once, always taking the best available move even when it lowers
// modularity (a fresh singleton community counts as a target), then keeps
// the best prefix of the sequence. Rounds repeat while they improve.
// `rng` picks among equally good moves. Quadratic in the node count.
void kl_refine(const LevelGraph& g, std::vector<std::uint32_t>& comm, Rng& rng) {
  constexpr double kMinGain = 1e-10;
  const std::size_t n = g.size();
  std::vector<double> link(n, 0.0);
  std::vector<std::uint32_t> touched;
  while (true) {
    std::vector<double> total(n, 0.0);
    std::vector<std::uint32_t> members(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
      total[comm[i]] += g.degree[i];
      ++members[comm[i]];
    }
    std::vector<std::uint8_t> moved(n, 0);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> undo;  // (node, previous community)
    double gain_sum = 0.0;
    double best_sum = 0.0;
    std::size_t best_len = 0;
    for (std::size_t step = 0; step < n; ++step) {
      std::uint32_t pick = 0;
      std::uint32_t target = 0;
      double pick_gain = -std::numeric_limits<double>::infinity();
      double pick_delta = 0.0;
      std::uint64_t ties = 0;
      bool found = false;
      for (std::uint32_t i = 0; i < n; ++i) {
        if (moved[i]) continue;
        const std::uint32_t home = comm[i];
        const double k = g.degree[i];
        touched.clear();
        for (const auto& [j, w] : g.adj[i]) {
          const auto c = comm[j];
          if (link[c] == 0.0) touched.push_back(c);
          link[c] += w;
        }
        const double rest = total[home] - k;
        const double stay = link[home] - rest * k / g.two_m;
        std::sort(touched.begin(), touched.end());
        std::uint32_t best = home;
        double best_gain = -std::numeric_limits<double>::infinity();
        for (std::uint32_t c : touched) {
          if (c == home) continue;
          const double gain = link[c] - total[c] * k / g.two_m;
          if (gain > best_gain) {
            best_gain = gain;
            best = c;
          }
        }
        if (members[home] > 1) {
          // Splitting off into an empty community has zero link and zero total.
          const auto empty = static_cast<std::uint32_t>(
              std::find(members.begin(), members.end(), 0u) - members.begin());
          if (empty < n && (0.0 > best_gain || (0.0 == best_gain && empty < best))) {
            best_gain = 0.0;
            best = empty;
          }
        }
        for (std::uint32_t c : touched) link[c] = 0.0;
        if (best == home) continue;
        const double delta = 2.0 * (best_gain - stay) / g.two_m;
        // Equal moves are drawn uniformly so restarts explore different paths.
        if (!found || delta > pick_gain + kMinGain) {
          found = true;
          pick_gain = delta;
          pick_delta = delta;
          pick = i;
          target = best;
          ties = 1;
        } else if (delta >= pick_gain - kMinGain && rng.below(++ties) == 0) {
          pick_delta = delta;
          pick = i;
          target = best;
        }
      }
      if (!found) break;
      undo.emplace_back(pick, comm[pick]);
      total[comm[pick]] -= g.degree[pick];
      --members[comm[pick]];
      comm[pick] = target;
      total[target] += g.degree[pick];
      ++members[target];
      moved[pick] = 1;
      gain_sum += pick_delta;
      if (gain_sum > best_sum + kMinGain) {
        best_sum = gain_sum;
        best_len = undo.size();
      }
    }
    while (undo.size() > best_len) {
      comm[undo.back().first] = undo.back().second;
      undo.pop_back();
    }
    if (best_len == 0) return;
  }
}

double level_modularity(const LevelGraph& g, const std::vector<std::uint32_t>& comm) {
  std::vector<double> internal(g.size(), 0.0);
  std::vector<double> total(g.size(), 0.0);
  for (std::uint32_t u = 0; u < g.size(); ++u) {
    internal[comm[u]] += g.loop[u];
    total[comm[u]] += g.degree[u];
    for (const auto& [v, w] : g.adj[u]) {
      if (comm[v] == comm[u]) internal[comm[u]] += w;
    }
  }
  double q = 0.0;
  for (std::size_t c = 0; c < g.size(); ++c) {
    q += internal[c] / g.two_m - (total[c] / g.two_m) * (total[c] / g.two_m);
  }
  return q;
}

// Dissolves each community in turn into singletons and lets only those nodes
// move greedily, first into the surviving communities and then freely; keeps the result when modularity improves. Returns true if
// any community was rearranged.
bool dissolve_refine(const LevelGraph& g, std::vector<std::uint32_t>& comm) {
  constexpr double kMinGain = 1e-10;
  const std::size_t n = g.size();
  bool any = false;
  for (std::uint32_t c = 0; c < n; ++c) {
    std::vector<std::uint32_t> nodes;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (comm[i] == c) nodes.push_back(i);
    }
    if (nodes.size() < 2) continue;
    const double before = level_modularity(g, comm);
    std::vector<std::uint32_t> trial = comm;
    std::vector<std::uint32_t> used(n, 0);
    for (auto x : trial) used[x] = 1;
    std::uint32_t fresh = 0;
    for (std::size_t k = 1; k < nodes.size(); ++k) {
      while (used[fresh]) ++fresh;
      used[fresh] = 1;
      trial[nodes[k]] = fresh;
    }
    std::vector<double> total(n, 0.0);
    for (std::uint32_t i = 0; i < n; ++i) total[trial[i]] += g.degree[i];
    std::vector<std::uint8_t> dissolved(n, 0);
    for (std::uint32_t i : nodes) dissolved[trial[i]] = 1;
    std::vector<double> link(n, 0.0);
    std::vector<std::uint32_t> touched;
    // The first sweep only sends members to surviving communities; later
    // sweeps let them regroup freely.
    bool first = true;
    for (bool moved = true; moved; first = false) {
      moved = false;
      for (std::uint32_t i : nodes) {
        const std::uint32_t home = trial[i];
        const double k = g.degree[i];
        touched.clear();
        for (const auto& [j, w] : g.adj[i]) {
          if (link[trial[j]] == 0.0) touched.push_back(trial[j]);
          link[trial[j]] += w;
        }
        total[home] -= k;
        const double stay = link[home] - total[home] * k / g.two_m;
        std::sort(touched.begin(), touched.end());
        std::uint32_t best = home;
        double best_gain = stay + kMinGain;
        for (std::uint32_t t : touched) {
          if (t == home || (first && dissolved[t])) continue;
          const double gain = link[t] - total[t] * k / g.two_m;
          if (gain > best_gain) {
            best_gain = gain;
            best = t;
          }
        }
        total[best] += k;
        if (best != home) {
          trial[i] = best;
          moved = true;
        }
        for (std::uint32_t t : touched) link[t] = 0.0;
      }
    }
    if (level_modularity(g, trial) > before + kMinGain) {
      comm = std::move(trial);
      any = true;
    }
  }
  return any;
}

// One Louvain run: local moving and aggregation until a level has no moves,
// then a refinement sweep that replays local moving from the coarsest level
// down to the original nodes, starting from the projected partition, and
// finally Kernighan-Lin, dissolve and merge sweeps on the original nodes.
std::vector<std::uint32_t> louvain_pass(const SupplyNetwork& net, std::uint64_t seed) {
  std::vector<LevelGraph> levels{LevelGraph::from(net)};
  std::vector<std::vector<std::uint32_t>> maps;  // level l node -> level l+1 node
  for (std::uint64_t depth = 0;; ++depth) {
    const LevelGraph& level = levels.back();
    std::vector<std::uint32_t> comm(level.size());
    std::iota(comm.begin(), comm.end(), 0u);
    Rng rng(hash_words({seed, depth}));
    if (!move_nodes(level, comm, rng)) break;
    const std::uint32_t count = compact(comm);
    if (count == level.size()) break;
    LevelGraph next = level.aggregate(comm, count);
    maps.push_back(std::move(comm));
    levels.push_back(std::move(next));
  }

  std::vector<std::uint32_t> top(levels.back().size());
  std::iota(top.begin(), top.end(), 0u);
  for (std::size_t l = levels.size(); l-- > 0;) {
    std::vector<std::uint32_t> comm(levels[l].size());
    if (l + 1 < levels.size()) {
      for (std::size_t v = 0; v < comm.size(); ++v) comm[v] = top[maps[l][v]];
    } else {
      comm = top;
    }
    Rng rng(hash_words({seed, levels.size() + l, 0x726566696e65ULL}));
    move_nodes(levels[l], comm, rng);
    compact(comm);
    top = std::move(comm);
  }

  if (net.size() > kPolishMaxNodes) return top;

  // Alternate the sweeps with community merging until nothing changes.
  for (std::uint64_t round = 0;; ++round) {
    Rng kl_rng(hash_words({seed, round, 0x6b6cULL}));
    kl_refine(levels[0], top, kl_rng);
    const bool rearranged = dissolve_refine(levels[0], top);
    const std::uint32_t count = compact(top);
    const LevelGraph coarse = levels[0].aggregate(top, count);
    std::vector<std::uint32_t> merged(count);
    std::iota(merged.begin(), merged.end(), 0u);
    Rng rng(hash_words({seed, round, 0x6d65726765ULL}));
    const bool merged_any = move_nodes(coarse, merged, rng);
    if (!merged_any && !rearranged) break;
    for (auto& c : top) c = merged[c];
    compact(top);
  }
  return top;
}

}  // namespace

Partition louvain(const SupplyNetwork& net, std::uint64_t seed) {
  if (net.edge_count() == 0) throw std::invalid_argument("louvain: network has no edges");
  Partition best;
  double best_q = -std::numeric_limits<double>::infinity();
  const std::uint64_t restarts = net.size() > kPolishMaxNodes ? 1 : kLouvainRestarts;
  for (std::uint64_t restart = 0; restart < restarts; ++restart) {
    Partition candidate = Partition::from_labels(louvain_pass(net, hash_words({seed, restart})));
    const double q = modularity(net, candidate);
    if (q > best_q + 1e-12) {
      best_q = q;
      best = std::move(candidate);
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Distributions
// ---------------------------------------------------------------------------

namespace {

double bin_edge(long index) {
  return std::pow(10.0, static_cast<double>(index) / kCapitalBinsPerDecade);
}

long capital_bin(double capital) {
  auto idx = static_cast<long>(std::floor(kCapitalBinsPerDecade * std::log10(capital)));
  while (capital < bin_edge(idx)) --idx;
  while (capital >= bin_edge(idx + 1)) ++idx;
  return idx;
}

}  // namespace

Distributions degree_and_capital_distribution(const SupplyNetwork& net) {
  Distributions out;
  std::map<long, std::size_t> bins;
  for (const Firm& f : net.firms()) {
    ++out.degree[net.degree(f.id)];
    if (f.registered_capital <= 0.0) {
      ++out.zero_capital;
    } else {
      ++bins[capital_bin(f.registered_capital)];
    }
  }
  if (!bins.empty()) {
    for (long idx = bins.begin()->first; idx <= bins.rbegin()->first; ++idx) {
      const auto it = bins.find(idx);
      out.capital.push_back({bin_edge(idx), bin_edge(idx + 1), it == bins.end() ? 0 : it->second});
    }
  }
  return out;
}

double degree_ccdf_slope(const SupplyNetwork& net, std::size_t min_degree) {
  std::map<std::size_t, std::size_t> hist;
  for (FirmId v = 0; v < net.size(); ++v) ++hist[net.degree(v)];
  std::vector<double> xs, ys;
  std::size_t at_least = net.size();
  for (const auto& [k, c] : hist) {
    if (k >= min_degree && k > 0) {
      xs.push_back(std::log10(static_cast<double>(k)));
      ys.push_back(std::log10(static_cast<double>(at_least) / static_cast<double>(net.size())));
    }
    at_least -= c;
  }
  if (xs.size() < 2) throw std::invalid_argument("degree_ccdf_slope: fewer than two degree values");
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxy / sxx;
}

// ---------------------------------------------------------------------------
// Metric table and correlation
// ---------------------------------------------------------------------------

const std::vector<double>& MetricTable::column(std::size_t index) const {
  switch (index) {
    case 0: return degree;
    case 1: return closeness;
    case 2: return betweenness;
    case 3: return eigenvector;
    case 4: return pagerank;
    case 5: return clustering;
    case 6: return triangles;
    case 7: return capital;
    default: throw std::out_of_range("MetricTable::column");
  }
}

MetricTable compute_metrics(const SupplyNetwork& net) {
  MetricTable t;
  const std::size_t n = net.size();
  t.firm.reserve(n);
  for (const Firm& f : net.firms()) {
    t.firm.push_back(f.canonical_name);
    t.degree.push_back(static_cast<double>(net.degree(f.id)));
    t.capital.push_back(f.registered_capital);
  }
  t.closeness = soc_cascade::closeness(net);
  t.betweenness = soc_cascade::betweenness(net);
  t.eigenvector = eigenvector_centrality(net);
  t.pagerank = soc_cascade::pagerank(net);
  for (const auto& lc : local_clustering(net)) {
    t.clustering.push_back(lc.clustering);
    t.triangles.push_back(static_cast<double>(lc.triangles));
  }
  return t;
}

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("pearson: length mismatch");
  const auto constant = [](const std::vector<double>& v) {
    return std::adjacent_find(v.begin(), v.end(), std::not_equal_to<>()) == v.end();
  };
  if (x.size() < 2 || constant(x) || constant(y)) return std::nullopt;
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

namespace {

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> rank(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[idx[k]] = r;
    i = j + 1;
  }
  return rank;
}

}  // namespace

std::optional<double> spearman(const std::vector<double>& x, const std::vector<double>& y) {
  return pearson(average_ranks(x), average_ranks(y));
}

CorrelationMatrix metric_correlation(const MetricTable& table, CorrelationKind kind) {
  if (table.size() < 3) throw std::invalid_argument("metric_correlation: needs at least 3 firms");
  CorrelationMatrix out;
  out.kind = kind;
  const std::size_t k = MetricTable::kColumns.size();
  out.names.assign(MetricTable::kColumns.begin(), MetricTable::kColumns.end());
  out.values.assign(k * k, std::nullopt);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      const auto value = kind == CorrelationKind::kPearson
                             ? pearson(table.column(i), table.column(j))
                             : spearman(table.column(i), table.column(j));
      out.values[i * k + j] = value;
      out.values[j * k + i] = value;
    }
  }
  return out;
}

}  // namespace soc_cascade
