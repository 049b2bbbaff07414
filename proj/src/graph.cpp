#include "soc_cascade/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace soc_cascade {

double log_capital(double registered_capital) {
  return std::log1p(registered_capital);
}

NetworkBuild SupplyNetwork::from_ids(std::vector<FirmSpec> firms, std::span<const Edge> edges) {
  NetworkBuild out;
  SupplyNetwork& net = out.network;
  const std::size_t n = firms.size();
  if (n > std::numeric_limits<FirmId>::max()) throw GraphError("too many firms");

  net.firms_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    FirmSpec& spec = firms[i];
    if (spec.name.empty()) throw GraphError("firm " + std::to_string(i) + " has an empty name");
    if (!(spec.capital >= 0.0) || !std::isfinite(spec.capital)) {
      throw GraphError("firm '" + spec.name + "' has invalid capital");
    }
    Firm firm;
    firm.id = static_cast<FirmId>(i);
    firm.canonical_name = std::move(spec.name);
    firm.aliases = std::move(spec.aliases);
    firm.aliases.push_back(firm.canonical_name);
    std::sort(firm.aliases.begin(), firm.aliases.end());
    firm.aliases.erase(std::unique(firm.aliases.begin(), firm.aliases.end()), firm.aliases.end());
    firm.registered_capital = spec.capital;
    firm.log_capital = log_capital(spec.capital);
    for (const auto& alias : firm.aliases) {
      auto [it, inserted] = net.by_name_.emplace(alias, firm.id);
      if (!inserted && it->second != firm.id) {
        throw GraphError("name '" + alias + "' belongs to more than one firm");
      }
    }
    net.firms_.push_back(std::move(firm));
  }

  std::vector<Edge> arcs;
  arcs.reserve(edges.size() * 2);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) {
      throw GraphError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") references an unknown firm");
    }
    if (u == v) {
      ++out.self_loops_dropped;
      continue;
    }
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  std::sort(arcs.begin(), arcs.end());
  const std::size_t before = arcs.size();
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  out.duplicate_edges = (before - arcs.size()) / 2;

  net.offsets_.assign(n + 1, 0);
  for (const auto& arc : arcs) ++net.offsets_[arc.first + 1];
  for (std::size_t i = 0; i < n; ++i) net.offsets_[i + 1] += net.offsets_[i];
  net.targets_.resize(arcs.size());
  // arcs are sorted by (source, target), so targets land sorted per node.
  for (std::size_t k = 0; k < arcs.size(); ++k) net.targets_[k] = arcs[k].second;
  return out;
}

NetworkBuild SupplyNetwork::from_edge_list(
    std::vector<FirmSpec> firms, std::span<const std::pair<std::string, std::string>> edges) {
  std::unordered_map<std::string, FirmId> index;
  for (std::size_t i = 0; i < firms.size(); ++i) {
    index.emplace(firms[i].name, static_cast<FirmId>(i));
    for (const auto& alias : firms[i].aliases) index.emplace(alias, static_cast<FirmId>(i));
  }
  std::vector<Edge> ids;
  ids.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    const auto ia = index.find(a);
    if (ia == index.end()) throw GraphError("edge endpoint '" + a + "' is not a known firm");
    const auto ib = index.find(b);
    if (ib == index.end()) throw GraphError("edge endpoint '" + b + "' is not a known firm");
    ids.emplace_back(ia->second, ib->second);
  }
  return from_ids(std::move(firms), ids);
}

bool SupplyNetwork::has_edge(FirmId u, FirmId v) const {
  const auto adj = neighbors(u);
  return std::binary_search(adj.begin(), adj.end(), v);
}

std::optional<FirmId> SupplyNetwork::find(std::string_view name) const {
  const auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::vector<Edge> SupplyNetwork::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (FirmId u = 0; u < size(); ++u) {
    for (FirmId v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<double> SupplyNetwork::log_capitals() const {
  std::vector<double> out(size());
  for (const auto& f : firms_) out[f.id] = f.log_capital;
  return out;
}

SupplyNetwork SupplyNetwork::with_capitals(std::span<const double> capitals) const {
  if (capitals.size() != size()) throw GraphError("capital vector size does not match network");
  SupplyNetwork copy = *this;
  for (std::size_t i = 0; i < capitals.size(); ++i) {
    if (!(capitals[i] >= 0.0) || !std::isfinite(capitals[i])) {
      throw GraphError("invalid capital for firm '" + copy.firms_[i].canonical_name + "'");
    }
    copy.firms_[i].registered_capital = capitals[i];
    copy.firms_[i].log_capital = log_capital(capitals[i]);
  }
  return copy;
}

std::vector<std::uint32_t> component_labels(const SupplyNetwork& net) {
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> label(net.size(), kUnset);
  std::vector<FirmId> queue;
  std::uint32_t next = 0;
  for (FirmId root = 0; root < net.size(); ++root) {
    if (label[root] != kUnset) continue;
    label[root] = next;
    queue.assign(1, root);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (FirmId w : net.neighbors(queue[head])) {
        if (label[w] == kUnset) {
          label[w] = next;
          queue.push_back(w);
        }
      }
    }
    ++next;
  }
  return label;
}

std::size_t component_count(const SupplyNetwork& net) {
  const auto labels = component_labels(net);
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
}

bool is_connected(const SupplyNetwork& net) { return component_count(net) <= 1; }

SupplyNetwork induced_subgraph(const SupplyNetwork& net, std::span<const FirmId> keep) {
  constexpr auto kDropped = std::numeric_limits<FirmId>::max();
  std::vector<FirmId> remap(net.size(), kDropped);
  std::vector<FirmSpec> firms;
  firms.reserve(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const Firm& f = net.firm(keep[i]);
    remap[keep[i]] = static_cast<FirmId>(i);
    std::vector<std::string> aliases;
    for (const auto& a : f.aliases) {
      if (a != f.canonical_name) aliases.push_back(a);
    }
    firms.push_back({f.canonical_name, f.registered_capital, std::move(aliases)});
  }
  std::vector<Edge> edges;
  for (FirmId u : keep) {
    for (FirmId v : net.neighbors(u)) {
      if (u < v && remap[v] != kDropped) edges.emplace_back(remap[u], remap[v]);
    }
  }
  return SupplyNetwork::from_ids(std::move(firms), edges).network;
}

SupplyNetwork largest_connected_component(const SupplyNetwork& net) {
  if (net.empty()) throw GraphError("largest_connected_component: empty network");
  const auto labels = component_labels(net);
  const std::uint32_t count = *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<std::size_t> sizes(count, 0);
  for (auto l : labels) ++sizes[l];
  // Labels follow smallest-member order, so the first maximum wins ties.
  const auto best = static_cast<std::uint32_t>(
      std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<FirmId> keep;
  keep.reserve(sizes[best]);
  for (FirmId v = 0; v < net.size(); ++v) {
    if (labels[v] == best) keep.push_back(v);
  }
  return induced_subgraph(net, keep);
}

}  // namespace soc_cascade
