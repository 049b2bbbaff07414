#include "soc_cascade/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "soc_cascade/ingest.hpp"
#include "soc_cascade/rng.hpp"
#include "soc_cascade/trace.hpp"

namespace soc_cascade {

namespace {

constexpr std::size_t kNameLength = 12;
constexpr std::uint64_t kNameStream = 0x6e616d6573ULL;
constexpr std::uint64_t kCapitalStream = 0x6361706974616cULL;

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <class T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw std::invalid_argument("invalid " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

std::vector<FirmSpec> random_firms(std::size_t n, std::uint64_t seed) {
  Rng rng(hash_words({seed, kNameStream}));
  std::unordered_set<std::string> used;
  std::vector<FirmSpec> firms;
  firms.reserve(n);
  while (firms.size() < n) {
    std::string name(kNameLength, 'a');
    for (char& c : name) c = static_cast<char>('a' + rng.below(26));
    if (used.insert(name).second) firms.push_back({name, 0.0, {}});
  }
  return firms;
}

}  // namespace

void CapitalModel::validate() const {
  switch (kind) {
    case Kind::kPareto:
      if (!(a > 1.0) || !(b > 0.0)) throw std::invalid_argument("pareto needs alpha > 1 and scale > 0");
      break;
    case Kind::kLognormal:
      if (!std::isfinite(a) || !(b >= 0.0)) throw std::invalid_argument("lognormal needs sigma >= 0");
      break;
    case Kind::kConstant:
      if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("constant capital must be > 0");
      break;
  }
}

GraphModel parse_graph_model(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() == 3 && parts[0] == "ba") {
    BarabasiAlbertModel m{parse_number<std::size_t>(parts[1], "n"), parse_number<std::size_t>(parts[2], "m")};
    if (m.m < 1 || m.n < m.m) throw std::invalid_argument("ba model needs n >= m >= 1");
    return m;
  }
  if (parts.size() == 3 && parts[0] == "er") {
    ErdosRenyiModel m{parse_number<std::size_t>(parts[1], "n"), parse_number<double>(parts[2], "p")};
    if (!(m.p >= 0.0 && m.p <= 1.0)) throw std::invalid_argument("er model needs 0 <= p <= 1");
    return m;
  }
  throw std::invalid_argument("graph model must be 'ba:<n>:<m>' or 'er:<n>:<p>', got '" +
                              std::string(text) + "'");
}

std::string to_string(const GraphModel& model) {
  if (const auto* ba = std::get_if<BarabasiAlbertModel>(&model)) {
    return "ba:" + std::to_string(ba->n) + ":" + std::to_string(ba->m);
  }
  const auto& er = std::get<ErdosRenyiModel>(model);
  return "er:" + std::to_string(er.n) + ":" + format_real(er.p);
}

CapitalModel parse_capital_model(std::string_view text) {
  const auto parts = split(text, ':');
  CapitalModel model;
  if (parts.size() == 3 && parts[0] == "pareto") {
    model = CapitalModel::pareto(parse_number<double>(parts[1], "alpha"), parse_number<double>(parts[2], "scale"));
  } else if (parts.size() == 3 && parts[0] == "lognormal") {
    model = CapitalModel::lognormal(parse_number<double>(parts[1], "mu"), parse_number<double>(parts[2], "sigma"));
  } else if (parts.size() == 2 && parts[0] == "constant") {
    model = CapitalModel::constant(parse_number<double>(parts[1], "value"));
  } else {
    throw std::invalid_argument(
        "capital model must be 'pareto:<alpha>:<scale>', 'lognormal:<mu>:<sigma>' or "
        "'constant:<value>', got '" + std::string(text) + "'");
  }
  model.validate();
  return model;
}

std::string to_string(const CapitalModel& model) {
  switch (model.kind) {
    case CapitalModel::Kind::kPareto: return "pareto:" + format_real(model.a) + ":" + format_real(model.b);
    case CapitalModel::Kind::kLognormal: return "lognormal:" + format_real(model.a) + ":" + format_real(model.b);
    case CapitalModel::Kind::kConstant: return "constant:" + format_real(model.a);
  }
  return "?";
}

SupplyNetwork barabasi_albert(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (m < 1 || n < m) throw std::invalid_argument("barabasi_albert needs n >= m >= 1");
  Rng rng(seed);
  std::vector<Edge> edges;
  edges.reserve(m * (m - 1) / 2 + (n - m) * m);
  // Every endpoint of every edge, so a uniform pick is degree-proportional.
  std::vector<FirmId> ends;
  for (FirmId u = 0; u < m; ++u) {
    for (FirmId v = u + 1; v < m; ++v) {
      edges.emplace_back(u, v);
      ends.push_back(u);
      ends.push_back(v);
    }
  }
  std::vector<FirmId> targets;
  for (std::size_t v = m; v < n; ++v) {
    targets.clear();
    while (targets.size() < m) {
      // A lone seed node has no edges yet; it is the only choice.
      const FirmId t = ends.empty() ? FirmId{0} : ends[rng.below(ends.size())];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (FirmId t : targets) {
      edges.emplace_back(t, static_cast<FirmId>(v));
      ends.push_back(t);
      ends.push_back(static_cast<FirmId>(v));
    }
  }
  return SupplyNetwork::from_ids(random_firms(n, seed), edges).network;
}

SupplyNetwork erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("erdos_renyi needs 0 <= p <= 1");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (FirmId u = 0; u < n; ++u) {
    for (FirmId v = u + 1; v < n; ++v) {
      if (rng.uniform() < p) edges.emplace_back(u, v);
    }
  }
  return SupplyNetwork::from_ids(random_firms(n, seed), edges).network;
}

std::vector<double> draw_capitals(std::size_t n, const CapitalModel& model, std::uint64_t seed) {
  model.validate();
  Rng rng(seed);
  std::vector<double> out(n);
  for (double& c : out) {
    switch (model.kind) {
      case CapitalModel::Kind::kPareto:
        c = model.b / std::pow(rng.uniform_open_zero(), 1.0 / model.a);
        break;
      case CapitalModel::Kind::kLognormal:
        c = std::exp(model.a + model.b * rng.normal());
        break;
      case CapitalModel::Kind::kConstant:
        c = model.a;
        break;
    }
  }
  return out;
}

SupplyNetwork assign_capital(const SupplyNetwork& net, const CapitalModel& model,
                             std::uint64_t seed) {
  const auto capitals = draw_capitals(net.size(), model, seed);
  return net.with_capitals(capitals);
}

SupplyNetwork generate(const GenSpec& spec) {
  SupplyNetwork net;
  if (const auto* ba = std::get_if<BarabasiAlbertModel>(&spec.model)) {
    net = barabasi_albert(ba->n, ba->m, spec.rng_seed);
  } else {
    const auto& er = std::get<ErdosRenyiModel>(spec.model);
    net = erdos_renyi(er.n, er.p, spec.rng_seed);
  }
  return assign_capital(net, spec.capital, hash_words({spec.rng_seed, kCapitalStream}));
}

void write_triplets(const SupplyNetwork& net, std::ostream& out) {
  out << "head,relation,tail,source\n";
  for (const auto& [u, v] : net.edges()) {
    out << csv_escape(net.firm(u).canonical_name) << ",supplies,"
        << csv_escape(net.firm(v).canonical_name) << ",synthetic\n";
  }
}

void write_attributes(const SupplyNetwork& net, std::ostream& out) {
  out << "name,registered_capital\n";
  for (const auto& f : net.firms()) {
    out << csv_escape(f.canonical_name) << ',' << format_real(f.registered_capital) << '\n';
  }
}

}  // namespace soc_cascade
