#include "soc_cascade/io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace soc_cascade {

namespace {

void reject_unknown(const Json& doc, const std::set<std::string>& known, const char* what) {
  if (!doc.is_object()) throw std::invalid_argument(std::string(what) + " must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) {
      throw std::invalid_argument(std::string(what) + ": unknown field '" + key + "'");
    }
  }
}

template <class T>
void read_field(const Json& doc, const char* key, T& out) {
  const auto it = doc.find(key);
  if (it == doc.end()) return;
  try {
    out = it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw std::invalid_argument(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

Json network_to_json(const SupplyNetwork& net) {
  Json firms = Json::array();
  for (const auto& f : net.firms()) {
    Json aliases = Json::array();
    for (const auto& a : f.aliases) {
      if (a != f.canonical_name) aliases.push_back(a);
    }
    firms.push_back({{"name", f.canonical_name}, {"capital", f.registered_capital}, {"aliases", aliases}});
  }
  Json edges = Json::array();
  for (const auto& [u, v] : net.edges()) edges.push_back(Json::array({u, v}));
  return {{"format_version", kNetworkFormatVersion}, {"firms", firms}, {"edges", edges}};
}

SupplyNetwork network_from_json(const Json& doc) {
  try {
    if (doc.at("format_version").get<int>() != kNetworkFormatVersion) {
      throw std::invalid_argument("unsupported network format_version");
    }
    std::vector<FirmSpec> firms;
    for (const auto& f : doc.at("firms")) {
      FirmSpec spec{f.at("name").get<std::string>(), f.at("capital").get<double>(), {}};
      if (f.contains("aliases")) spec.aliases = f.at("aliases").get<std::vector<std::string>>();
      firms.push_back(std::move(spec));
    }
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw std::invalid_argument("edge must be a pair of ids");
      edges.emplace_back(e[0].get<FirmId>(), e[1].get<FirmId>());
    }
    return SupplyNetwork::from_ids(std::move(firms), edges).network;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed network document: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("'" + path + "' is not valid JSON: " + e.what());
  }
}

SupplyNetwork load_network(const std::string& path) {
  const Json doc = read_json_file(path);
  try {
    return network_from_json(doc);
  } catch (const std::exception& e) {
    throw std::runtime_error("'" + path + "': " + e.what());
  }
}

std::string dump_json(const Json& doc) { return doc.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

void save_network(const SupplyNetwork& net, const std::string& path) {
  write_text_file(path, dump_json(network_to_json(net)));
}

Json rc_config_to_json(const RcConfig& cfg) {
  return {{"lambda", cfg.lambda},
          {"mu", cfg.mu},
          {"delta", cfg.delta},
          {"tau", cfg.tau},
          {"beta", to_string(cfg.beta)},
          {"recovery", std::string(to_string(cfg.recovery))},
          {"threshold", cfg.threshold},
          {"max_steps", cfg.max_steps},
          {"convergence_eps", cfg.convergence_eps}};
}

RcConfig rc_config_from_json(const Json& doc) {
  reject_unknown(doc, {"lambda", "mu", "delta", "tau", "beta", "recovery", "threshold", "max_steps",
                       "convergence_eps"},
                 "rc config");
  RcConfig cfg;
  read_field(doc, "lambda", cfg.lambda);
  read_field(doc, "mu", cfg.mu);
  read_field(doc, "delta", cfg.delta);
  read_field(doc, "tau", cfg.tau);
  read_field(doc, "threshold", cfg.threshold);
  read_field(doc, "max_steps", cfg.max_steps);
  read_field(doc, "convergence_eps", cfg.convergence_eps);
  std::string text;
  if (doc.contains("beta")) {
    read_field(doc, "beta", text);
    cfg.beta = parse_beta_mode(text);
  }
  if (doc.contains("recovery")) {
    read_field(doc, "recovery", text);
    cfg.recovery = parse_recovery_mode(text);
  }
  cfg.validate();
  return cfg;
}

Json rt_config_to_json(const RtConfig& cfg) {
  return {{"policy", std::string(to_string(cfg.policy))},
          {"p_absorb", cfg.p_absorb},
          {"delta_c", cfg.delta_c},
          {"c_floor", cfg.c_floor},
          {"beta", to_string(cfg.beta)},
          {"tau", cfg.tau},
          {"max_steps", cfg.max_steps},
          {"rng_seed", cfg.rng_seed},
          {"swap_capacity_rules", cfg.swap_capacity_rules}};
}

RtConfig rt_config_from_json(const Json& doc) {
  reject_unknown(doc, {"policy", "p_absorb", "delta_c", "c_floor", "beta", "tau", "max_steps",
                       "rng_seed", "swap_capacity_rules"},
                 "rt config");
  RtConfig cfg;
  read_field(doc, "p_absorb", cfg.p_absorb);
  read_field(doc, "delta_c", cfg.delta_c);
  read_field(doc, "c_floor", cfg.c_floor);
  read_field(doc, "tau", cfg.tau);
  read_field(doc, "max_steps", cfg.max_steps);
  read_field(doc, "rng_seed", cfg.rng_seed);
  read_field(doc, "swap_capacity_rules", cfg.swap_capacity_rules);
  std::string text;
  if (doc.contains("policy")) {
    read_field(doc, "policy", text);
    cfg.policy = parse_rt_policy(text);
  }
  if (doc.contains("beta")) {
    read_field(doc, "beta", text);
    cfg.beta = parse_beta_mode(text);
  }
  cfg.validate();
  return cfg;
}

Json attack_plan_to_json(const AttackPlan& plan) {
  Json doc = {{"strategy", std::string(to_string(plan.strategy))}};
  if (const auto* frac = std::get_if<SeedFraction>(&plan.size)) {
    doc["p"] = frac->value;
  } else {
    doc["n"] = std::get<SeedCount>(plan.size).value;
  }
  doc["rng_seed"] = plan.rng_seed;
  return doc;
}

AttackPlan attack_plan_from_json(const Json& doc) {
  reject_unknown(doc, {"strategy", "p", "n", "rng_seed"}, "attack plan");
  if (doc.contains("p") == doc.contains("n")) {
    throw std::invalid_argument("attack plan needs exactly one of 'p' and 'n'");
  }
  AttackPlan plan;
  std::string strategy;
  read_field(doc, "strategy", strategy);
  plan.strategy = parse_attack_strategy(strategy);
  if (doc.contains("p")) {
    double p = 0.0;
    read_field(doc, "p", p);
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("attack plan: p must lie in (0, 1]");
    plan.size = SeedFraction{p};
  } else {
    std::size_t n = 0;
    read_field(doc, "n", n);
    if (n == 0) throw std::invalid_argument("attack plan: n must be positive");
    plan.size = SeedCount{n};
  }
  read_field(doc, "rng_seed", plan.rng_seed);
  return plan;
}

Json ingest_report_to_json(const IngestReport& report) {
  Json relations = Json::object();
  for (const auto& [label, count] : report.relations) relations[label] = count;
  return {{"raw_names", report.raw_names},
          {"groups", report.groups},
          {"merged", report.merged},
          {"self_loops_dropped", report.self_loops_dropped},
          {"duplicate_edges", report.duplicate_edges},
          {"bad_rows", report.bad_rows},
          {"defaulted_capital", report.defaulted_capital},
          {"relations", relations}};
}

}  // namespace soc_cascade
