#include "soc_cascade/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <stdexcept>

#include "soc_cascade/ingest.hpp"
#include "soc_cascade/rc_idm.hpp"
#include "soc_cascade/rng.hpp"
#include "soc_cascade/rt_idm.hpp"

namespace soc_cascade {

namespace {

constexpr const char* kMuOverLambda = "mu_over_lambda";
constexpr double kHalfFailed = 0.5;

std::string scalar_text(const Json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_float()) return format_real(value.get<double>());
  return value.dump();
}

std::string plan_label(const AttackPlan& plan) {
  std::string out(to_string(plan.strategy));
  if (const auto* frac = std::get_if<SeedFraction>(&plan.size)) {
    out += ":p=" + format_real(frac->value);
  } else {
    out += ":n=" + std::to_string(std::get<SeedCount>(plan.size).value);
  }
  if (plan.strategy == AttackStrategy::kRandom) out += ":seed=" + std::to_string(plan.rng_seed);
  return out;
}

std::string params_label(const Json& point) {
  std::string out;
  for (const auto& [key, value] : point.items()) {
    if (!out.empty()) out += ';';
    out += key + "=" + scalar_text(value);
  }
  return out;
}

Json resolved_config(const ExperimentSpec& spec, const Json& point, std::uint64_t seed) {
  Json doc = spec.base_config;
  std::optional<double> ratio;
  for (const auto& [key, value] : point.items()) {
    if (key == kMuOverLambda) {
      if (!value.is_number()) throw std::invalid_argument("mu_over_lambda values must be numbers");
      ratio = value.get<double>();
    } else {
      doc[key] = value;
    }
  }
  if (spec.model == ModelKind::kRc) {
    RcConfig cfg = rc_config_from_json(doc);
    if (ratio) {
      cfg.mu = *ratio * cfg.lambda;
      cfg.validate();
    }
    return rc_config_to_json(cfg);
  }
  RtConfig cfg = rt_config_from_json(doc);
  cfg.rng_seed = seed;
  return rt_config_to_json(cfg);
}

AttackPlan run_plan(const AttackPlan& plan, std::uint64_t seed) {
  AttackPlan out = plan;
  if (plan.strategy == AttackStrategy::kRandom) out.rng_seed = hash_words({plan.rng_seed, seed});
  return out;
}

}  // namespace

std::vector<std::string> grid_keys(ModelKind model) {
  if (model == ModelKind::kRc) {
    return {"beta", "convergence_eps", "delta", "lambda", "max_steps", "mu",
            kMuOverLambda, "recovery", "tau", "threshold"};
  }
  return {"beta", "c_floor", "delta_c", "max_steps", "p_absorb", "policy", "swap_capacity_rules", "tau"};
}

void ExperimentSpec::validate() const {
  if (replicates == 0) throw std::invalid_argument("replicates must be positive");
  if (plans.empty()) throw std::invalid_argument("at least one attack plan is required");
  if (!network.file && !network.generate) throw std::invalid_argument("network needs a file or a generator");
  const auto keys = grid_keys(model);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto& axis = grid[i];
    if (std::find(keys.begin(), keys.end(), axis.key) == keys.end()) {
      throw std::invalid_argument("grid key '" + axis.key + "' is not a tunable " +
                                  (model == ModelKind::kRc ? "rc" : "rt") + " config field");
    }
    if (axis.values.empty()) throw std::invalid_argument("grid axis '" + axis.key + "' has no values");
    if (i > 0 && !(grid[i - 1].key < axis.key)) throw std::invalid_argument("grid keys must be distinct");
  }
  // Parse every combination now so bad values fail before any run.
  for (const auto& point : grid_points(*this)) resolved_config(*this, point, 0);
}

ExperimentSpec experiment_spec_from_json(const Json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("experiment spec must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    static const std::vector<std::string> known = {"network", "model", "config", "grid",
                                                   "plans", "replicates", "master_seed"};
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw std::invalid_argument("experiment spec: unknown field '" + key + "'");
    }
  }
  ExperimentSpec spec;
  try {
    const Json& net = doc.at("network");
    if (net.contains("file")) spec.network.file = net.at("file").get<std::string>();
    if (net.contains("generate")) {
      GenSpec gen;
      gen.model = parse_graph_model(net.at("generate").get<std::string>());
      gen.capital = parse_capital_model(net.value("capital", std::string("pareto:2:50")));
      gen.rng_seed = net.value("seed", std::uint64_t{0});
      spec.network.generate = gen;
    }
    if (spec.network.file && spec.network.generate) {
      throw std::invalid_argument("network takes either 'file' or 'generate', not both");
    }
    spec.network.lcc = net.value("lcc", true);

    const std::string model = doc.at("model").get<std::string>();
    if (model == "rc") {
      spec.model = ModelKind::kRc;
    } else if (model == "rt") {
      spec.model = ModelKind::kRt;
    } else {
      throw std::invalid_argument("model must be 'rc' or 'rt'");
    }
    spec.base_config = doc.value("config", Json::object());
    if (doc.contains("grid")) {
      // ordered_json keeps insertion order; axes are stored sorted by key.
      std::map<std::string, std::vector<Json>> axes;
      for (const auto& [key, values] : doc.at("grid").items()) {
        if (!values.is_array()) throw std::invalid_argument("grid axis '" + key + "' must be a list");
        axes[key] = std::vector<Json>(values.begin(), values.end());
      }
      for (auto& [key, values] : axes) spec.grid.push_back({key, std::move(values)});
    }
    for (const auto& p : doc.at("plans")) spec.plans.push_back(attack_plan_from_json(p));
    const long long replicates = doc.value("replicates", 1LL);
    if (replicates <= 0) throw std::invalid_argument("replicates must be positive");
    spec.replicates = static_cast<std::size_t>(replicates);
    spec.master_seed = doc.value("master_seed", std::uint64_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed experiment spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

Json experiment_spec_to_json(const ExperimentSpec& spec) {
  Json net = Json::object();
  if (spec.network.file) net["file"] = *spec.network.file;
  if (spec.network.generate) {
    net["generate"] = to_string(spec.network.generate->model);
    net["capital"] = to_string(spec.network.generate->capital);
    net["seed"] = spec.network.generate->rng_seed;
  }
  net["lcc"] = spec.network.lcc;
  Json grid = Json::object();
  for (const auto& axis : spec.grid) grid[axis.key] = axis.values;
  Json plans = Json::array();
  for (const auto& p : spec.plans) plans.push_back(attack_plan_to_json(p));
  return {{"network", net},
          {"model", spec.model == ModelKind::kRc ? "rc" : "rt"},
          {"config", spec.base_config},
          {"grid", grid},
          {"plans", plans},
          {"replicates", spec.replicates},
          {"master_seed", spec.master_seed}};
}

SupplyNetwork resolve_network(const NetworkSource& source) {
  SupplyNetwork net = source.file ? load_network(*source.file) : generate(*source.generate);
  return source.lcc ? largest_connected_component(net) : net;
}

std::vector<Json> grid_points(const ExperimentSpec& spec) {
  std::vector<Json> points{Json::object()};
  for (const auto& axis : spec.grid) {
    std::vector<Json> next;
    next.reserve(points.size() * axis.values.size());
    for (const auto& p : points) {
      for (const auto& v : axis.values) {
        Json q = p;
        q[axis.key] = v;
        next.push_back(std::move(q));
      }
    }
    points = std::move(next);
  }
  return points;
}

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t point, std::size_t replicate) {
  return hash_words({master_seed, point, replicate});
}

ExperimentResult run_experiment(const ExperimentSpec& spec, const SupplyNetwork& net) {
  spec.validate();
  ExperimentResult result;
  result.points = grid_points(spec);
  const std::size_t point_count = result.points.size() * spec.plans.size();
  result.runs.resize(point_count * spec.replicates);

  for (std::size_t k = 0; k < result.runs.size(); ++k) {
    RunResult& run = result.runs[k];
    run.point = k / spec.replicates;
    run.replicate = k % spec.replicates;
    run.seed = run_seed(spec.master_seed, run.point, run.replicate);
    const std::size_t grid_index = run.point / spec.plans.size();
    run.config = resolved_config(spec, result.points[grid_index], run.seed);
    run.plan = attack_plan_to_json(run_plan(spec.plans[run.point % spec.plans.size()], run.seed));
  }

  const auto count = static_cast<std::int64_t>(result.runs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t k = 0; k < count; ++k) {
    RunResult& run = result.runs[k];
    try {
      const AttackPlan plan = attack_plan_from_json(run.plan);
      run.seeds = select_seeds(net, plan);
      if (spec.model == ModelKind::kRc) {
        run.trace = rc_run(net, rc_config_from_json(run.config), run.seeds);
      } else {
        run.trace = rt_run(net, rt_config_from_json(run.config), run.seeds);
      }
    } catch (const std::exception& e) {
      run.error = e.what();
      if (run.error.empty()) run.error = "unknown error";
    }
  }
  return result;
}

std::vector<PointSummary> summarize(const ExperimentSpec& spec, const ExperimentResult& result) {
  const std::size_t point_count = result.points.size() * spec.plans.size();
  std::vector<PointSummary> rows(point_count);
  for (std::size_t p = 0; p < point_count; ++p) {
    PointSummary& row = rows[p];
    row.point = p;
    row.param_values = params_label(result.points[p / spec.plans.size()]);
    row.plan = plan_label(spec.plans[p % spec.plans.size()]);
    std::vector<double> terminal;
    double t_sum = 0.0;
    std::size_t t_count = 0;
    for (std::size_t r = 0; r < spec.replicates; ++r) {
      const RunResult& run = result.runs[p * spec.replicates + r];
      if (!run.trace) {
        ++row.failed_runs;
        continue;
      }
      terminal.push_back(run.trace->terminal_affected_ratio());
      if (const auto t = run.trace->first_step_reaching(kHalfFailed)) {
        t_sum += *t;
        ++t_count;
      } else {
        ++row.n_never;
      }
    }
    row.ok_runs = terminal.size();
    if (terminal.empty()) continue;
    double sum = 0.0;
    for (double x : terminal) sum += x;
    row.mean_terminal = sum / static_cast<double>(terminal.size());
    double sq = 0.0;
    for (double x : terminal) sq += (x - row.mean_terminal) * (x - row.mean_terminal);
    row.std_terminal = std::sqrt(sq / static_cast<double>(terminal.size()));
    const auto [lo, hi] = std::minmax_element(terminal.begin(), terminal.end());
    row.min_terminal = *lo;
    row.max_terminal = *hi;
    if (t_count > 0) row.mean_t_half = t_sum / static_cast<double>(t_count);
  }
  return rows;
}

std::string summary_csv(const std::vector<PointSummary>& rows) {
  std::string out = "point,param_values,plan,mean_terminal,std_terminal,mean_t_half,n_never\n";
  for (const auto& row : rows) {
    out += std::to_string(row.point) + "," + csv_escape(row.param_values) + "," + csv_escape(row.plan) + ",";
    if (row.missing()) {
      out += "missing,missing,missing,missing\n";
      continue;
    }
    out += format_real(row.mean_terminal) + "," + format_real(row.std_terminal) + ",";
    out += row.mean_t_half ? format_real(*row.mean_t_half) : std::string("never");
    out += "," + std::to_string(row.n_never) + "\n";
  }
  return out;
}

void write_experiment(const std::string& dir, const ExperimentSpec& spec,
                      const ExperimentResult& result) {
  namespace fs = std::filesystem;
  const fs::path root(dir);
  fs::create_directories(root / "runs");
  write_text_file((root / "spec.json").string(), dump_json(experiment_spec_to_json(spec)));
  for (const auto& run : result.runs) {
    const fs::path run_dir = root / "runs" / std::to_string(run.point) / std::to_string(run.replicate);
    fs::create_directories(run_dir);
    Json doc = {{"point", run.point},
                {"replicate", run.replicate},
                {"seed", run.seed},
                {"params", result.points[run.point / spec.plans.size()]},
                {"config", run.config},
                {"plan", run.plan},
                {"seeds", run.seeds}};
    if (run.trace) {
      doc["terminal_reason"] = std::string(to_string(run.trace->reason));
      doc["terminal_affected_ratio"] = run.trace->terminal_affected_ratio();
      doc["steps"] = run.trace->steps.size();
      write_text_file((run_dir / "trace.csv").string(), trace_csv(*run.trace));
    } else {
      doc["error"] = run.error;
    }
    write_text_file((run_dir / "run.json").string(), dump_json(doc));
  }
  const auto rows = summarize(spec, result);
  write_text_file((root / "summary.csv").string(), summary_csv(rows));
  Json summary_rows = Json::array();
  for (const auto& row : rows) {
    Json r = {{"point", row.point}, {"param_values", row.param_values}, {"plan", row.plan},
              {"ok_runs", row.ok_runs}, {"failed_runs", row.failed_runs}};
    if (!row.missing()) {
      r["mean_terminal"] = row.mean_terminal;
      r["std_terminal"] = row.std_terminal;
      r["min_terminal"] = row.min_terminal;
      r["max_terminal"] = row.max_terminal;
      r["mean_t_half"] = row.mean_t_half ? Json(*row.mean_t_half) : Json("never");
      r["n_never"] = row.n_never;
    }
    summary_rows.push_back(r);
  }
  const Json summary = {{"std_convention", "population"},
                        {"t_half_level", kHalfFailed},
                        {"rows", summary_rows}};
  write_text_file((root / "summary.json").string(), dump_json(summary));
}

}  // namespace soc_cascade
