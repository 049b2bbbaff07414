#include "soc_cascade/serial.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stack>
#include <stdexcept>

#include "soc_cascade/ingest.hpp"

namespace soc_cascade::serial {

std::vector<std::pair<std::uint32_t, std::uint32_t>> similar_pairs(
    const std::vector<std::u32string>& keys, double threshold) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t i = 0; i < keys.size(); ++i) {
    for (std::uint32_t j = i + 1; j < keys.size(); ++j) {
      if (keys[i].empty() && keys[j].empty()) continue;
      if (name_similarity(keys[i], keys[j]) > threshold) out.emplace_back(i, j);
    }
  }
  return out;
}

namespace {

constexpr std::uint32_t kFar = std::numeric_limits<std::uint32_t>::max();

std::vector<std::uint32_t> bfs(const SupplyNetwork& net, FirmId source) {
  std::vector<std::uint32_t> dist(net.size(), kFar);
  std::queue<FirmId> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const FirmId v = q.front();
    q.pop();
    for (FirmId w : net.neighbors(v)) {
      if (dist[w] == kFar) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

void require_connected(const SupplyNetwork& net) {
  if (!is_connected(net)) throw std::invalid_argument("network is disconnected");
}

}  // namespace

std::vector<std::uint64_t> distance_sums(const SupplyNetwork& net) {
  std::vector<std::uint64_t> out(net.size(), 0);
  for (FirmId s = 0; s < net.size(); ++s) {
    for (std::uint32_t d : bfs(net, s)) {
      if (d != kFar) out[s] += d;
    }
  }
  return out;
}

PathStats path_stats(const SupplyNetwork& net) {
  require_connected(net);
  const std::size_t n = net.size();
  if (n < 2) return {};
  std::uint64_t total = 0;
  std::uint32_t diameter = 0;
  for (FirmId s = 0; s < n; ++s) {
    for (std::uint32_t d : bfs(net, s)) {
      total += d;
      diameter = std::max(diameter, d);
    }
  }
  return {static_cast<double>(total) / (static_cast<double>(n) * static_cast<double>(n - 1)),
          diameter};
}

std::vector<double> closeness(const SupplyNetwork& net) {
  require_connected(net);
  std::vector<double> out(net.size(), 0.0);
  if (net.size() < 2) return out;
  const auto sums = distance_sums(net);
  for (std::size_t v = 0; v < out.size(); ++v) {
    out[v] = static_cast<double>(net.size() - 1) / static_cast<double>(sums[v]);
  }
  return out;
}

std::vector<double> betweenness(const SupplyNetwork& net) {
  const std::size_t n = net.size();
  std::vector<double> cb(n, 0.0);
  for (FirmId s = 0; s < n; ++s) {
    std::vector<std::vector<FirmId>> pred(n);
    std::vector<double> sigma(n, 0.0);
    std::vector<std::int64_t> dist(n, -1);
    std::stack<FirmId> visited;
    std::queue<FirmId> q;
    sigma[s] = 1.0;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const FirmId v = q.front();
      q.pop();
      visited.push(v);
      for (FirmId w : net.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          pred[w].push_back(v);
        }
      }
    }
    std::vector<double> delta(n, 0.0);
    while (!visited.empty()) {
      const FirmId w = visited.top();
      visited.pop();
      for (FirmId v : pred[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) cb[w] += delta[w];
    }
  }
  for (double& x : cb) x *= 0.5;
  return cb;
}

std::vector<LocalClustering> local_clustering(const SupplyNetwork& net) {
  std::vector<LocalClustering> out(net.size());
  for (FirmId v = 0; v < net.size(); ++v) {
    const auto nv = net.neighbors(v);
    std::uint64_t tri = 0;
    for (std::size_t a = 0; a < nv.size(); ++a) {
      for (std::size_t b = a + 1; b < nv.size(); ++b) tri += net.has_edge(nv[a], nv[b]) ? 1 : 0;
    }
    const double k = static_cast<double>(nv.size());
    out[v] = {nv.size() < 2 ? 0.0 : 2.0 * static_cast<double>(tri) / (k * (k - 1.0)), tri};
  }
  return out;
}

RcState rc_step(const RcDynamics& dyn, std::span<const RcState> history) {
  const RcConfig& cfg = dyn.config;
  const RcState& lagged = history[history.size() - cfg.tau];
  const RcState& latest = history.back();
  const SupplyNetwork& net = *dyn.net;
  RcState next = RcState::zeros(net.size());
  for (FirmId i = 0; i < net.size(); ++i) {
    if (latest.absorbed[i]) {
      next.s[i] = 1.0;
      next.absorbed[i] = 1;
      continue;
    }
    const auto adj = net.neighbors(i);
    double pressure = 0.0;
    for (std::size_t k = 0; k < adj.size(); ++k) {
      pressure += dyn.beta[net.adjacency_offset(i) + k] * lagged.s[adj[k]];
    }
    const double si = lagged.s[i];
    const double drift = cfg.lambda * (1.0 - si) * pressure - cfg.mu * si * dyn.recovery[i];
    next.s[i] = std::clamp(si + cfg.delta * drift, 0.0, 1.0);
    next.absorbed[i] = next.s[i] >= 1.0 ? 1 : 0;
  }
  return next;
}

RtState rt_step(const RtDynamics& dyn, std::span<const RtState> history, std::uint32_t step) {
  const RtConfig& cfg = dyn.config;
  const RtState& lagged = history[history.size() - cfg.tau];
  const RtState& latest = history.back();
  const SupplyNetwork& net = *dyn.net;
  std::vector<FirmId> newly;
  for (FirmId i = 0; i < net.size(); ++i) {
    if (latest.failed[i]) continue;
    const double p = failed_neighbor_fraction(net, lagged.failed, i);
    const bool bankrupt = p > 0.0 && latest.capacity[i] <= cfg.c_floor;
    if (bankrupt || failure_draw(cfg, step, i) < p) newly.push_back(i);
  }
  RtState next = latest;
  fail_firms(dyn, next, newly, step);
  return next;
}

}  // namespace soc_cascade::serial
