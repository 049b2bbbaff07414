#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "report.hpp"
#include "soc_cascade/attack.hpp"
#include "soc_cascade/experiment.hpp"
#include "soc_cascade/ingest.hpp"
#include "soc_cascade/io.hpp"
#include "soc_cascade/parallel.hpp"
#include "soc_cascade/rc_idm.hpp"
#include "soc_cascade/rt_idm.hpp"
#include "soc_cascade/synth.hpp"
#include "soc_cascade/topology.hpp"
#include "soc_cascade/trace.hpp"

namespace soc_cascade::cli {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flag interpretation runs before any work; a bad value there is a usage
// error rather than a runtime failure.
template <class F>
auto usage_checked(F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void ensure_parent(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) fs::create_directories(parent);
}

void write_output(const std::string& path, const std::string& text) {
  ensure_parent(path);
  write_text_file(path, text);
}

SupplyNetwork load_input_network(const std::string& path, bool lcc) {
  SupplyNetwork net = load_network(path);
  if (net.empty()) throw std::runtime_error("'" + path + "' holds an empty network");
  return lcc ? largest_connected_component(net) : net;
}

// ---------------------------------------------------------------------------
// Shared flag groups
// ---------------------------------------------------------------------------

struct PlanFlags {
  std::string strategy = "HDA";
  std::optional<double> fraction;
  std::optional<std::size_t> count;
  std::uint64_t attack_seed = 0;
};

void add_plan_flags(CLI::App* app, PlanFlags& f, const std::string& seed_names) {
  app->add_option("--strategy", f.strategy, "Attack strategy: HDA, HCA, HIA or RANDOM")
      ->capture_default_str();
  auto* frac = app->add_option("--fraction", f.fraction,
                               "Seed fraction p in (0, 1]; seeds = ceil(p * n) (default 0.01)");
  auto* count = app->add_option("--count", f.count, "Seed count n (instead of --fraction)");
  frac->excludes(count);
  app->add_option(seed_names, f.attack_seed, "Seed for the RANDOM attack strategy")
      ->capture_default_str();
}

AttackPlan plan_from_flags(const PlanFlags& f) {
  return usage_checked([&] {
    AttackPlan plan;
    plan.strategy = parse_attack_strategy(f.strategy);
    if (f.count) {
      plan.size = SeedCount{*f.count};
    } else {
      plan.size = SeedFraction{f.fraction.value_or(0.01)};
    }
    plan.rng_seed = f.attack_seed;
    return plan;
  });
}

struct RcFlags {
  std::optional<std::string> config;
  std::optional<double> lambda;
  std::optional<double> mu;
  std::optional<double> delta;
  std::optional<std::uint32_t> tau;
  std::optional<std::string> beta;
  std::optional<std::string> recovery;
  std::optional<double> threshold;
  std::optional<std::uint32_t> max_steps;
  std::optional<double> eps;
};

void add_rc_flags(CLI::App* app, RcFlags& f, bool with_mu) {
  app->add_option("--config", f.config, "RC config JSON; flags below override its fields");
  app->add_option("--lambda", f.lambda, "Neighbor influence lambda (default 0.5)");
  if (with_mu) app->add_option("--mu", f.mu, "Recovery coefficient mu in (0, 1] (default 0.1)");
  app->add_option("--delta", f.delta, "Time gap delta (default 1)");
  app->add_option("--tau", f.tau, "Delay tau in steps (default 1)");
  app->add_option("--beta", f.beta, "Neighbor weights: degree, capital or uniform:<b> (default degree)");
  app->add_option("--recovery", f.recovery, "Recovery term: state or capital (default state)");
  app->add_option("--threshold", f.threshold, "Affected threshold on s (default 0.5)");
  app->add_option("--max-steps", f.max_steps, "Step cap (default 500)");
  app->add_option("--eps", f.eps, "Convergence epsilon on max |ds| (default 1e-6)");
}

RcConfig rc_from_flags(const RcFlags& f) {
  Json doc = f.config ? read_json_file(*f.config) : Json::object();
  return usage_checked([&] {
    if (!doc.is_object()) throw std::invalid_argument("RC config must be a JSON object");
    if (f.lambda) doc["lambda"] = *f.lambda;
    if (f.mu) doc["mu"] = *f.mu;
    if (f.delta) doc["delta"] = *f.delta;
    if (f.tau) doc["tau"] = *f.tau;
    if (f.beta) doc["beta"] = *f.beta;
    if (f.recovery) doc["recovery"] = *f.recovery;
    if (f.threshold) doc["threshold"] = *f.threshold;
    if (f.max_steps) doc["max_steps"] = *f.max_steps;
    if (f.eps) doc["convergence_eps"] = *f.eps;
    return rc_config_from_json(doc);
  });
}

struct RtFlags {
  std::optional<std::string> config;
  std::optional<std::string> policy;
  std::optional<double> p_absorb;
  std::optional<double> delta_c;
  std::optional<double> c_floor;
  std::optional<std::string> beta;
  std::optional<std::uint32_t> tau;
  std::optional<std::uint32_t> max_steps;
  std::optional<std::uint64_t> seed;
  bool swap = false;
};

void add_rt_flags(CLI::App* app, RtFlags& f) {
  app->add_option("--config", f.config, "RT config JSON; flags below override its fields");
  app->add_option("--policy", f.policy, "Failure policy: absorb, transfer or random (default transfer)");
  app->add_option("--p-absorb", f.p_absorb, "Chance to absorb under the random policy (default 0.5)");
  app->add_option("--delta-c", f.delta_c, "Capacity loss per failure (default 2)");
  app->add_option("--c-floor", f.c_floor, "Capacity floor (default 0.1)");
  app->add_option("--beta", f.beta, "Transfer weights: degree, capital or uniform:<b> (default degree)");
  app->add_option("--tau", f.tau, "Delay tau in steps (default 1)");
  app->add_option("--max-steps", f.max_steps, "Step cap (default 500)");
  app->add_option("--seed", f.seed, "Seed for failure and policy draws (default 0)");
  app->add_flag("--swap-capacity-rules", f.swap,
                "Absorb pushes losses to neighbors and transfer charges the firm itself");
}

RtConfig rt_from_flags(const RtFlags& f) {
  Json doc = f.config ? read_json_file(*f.config) : Json::object();
  return usage_checked([&] {
    if (!doc.is_object()) throw std::invalid_argument("RT config must be a JSON object");
    if (f.policy) doc["policy"] = *f.policy;
    if (f.p_absorb) doc["p_absorb"] = *f.p_absorb;
    if (f.delta_c) doc["delta_c"] = *f.delta_c;
    if (f.c_floor) doc["c_floor"] = *f.c_floor;
    if (f.beta) doc["beta"] = *f.beta;
    if (f.tau) doc["tau"] = *f.tau;
    if (f.max_steps) doc["max_steps"] = *f.max_steps;
    if (f.seed) doc["rng_seed"] = *f.seed;
    if (f.swap) doc["swap_capacity_rules"] = true;
    return rt_config_from_json(doc);
  });
}

void print_run_summary(const SimTrace& trace) {
  std::cout << "steps=" << trace.steps.back().step
            << " terminal_affected_ratio=" << format_real(trace.terminal_affected_ratio())
            << " reason=" << to_string(trace.reason) << '\n';
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

struct IngestArgs {
  std::string triplets;
  std::optional<std::string> attrs;
  double threshold = 0.6;
  bool blocking = false;
  std::string capital_default = "median";
  std::string out;
  std::optional<std::string> report;
};

int run_ingest(const IngestArgs& a) {
  const BuildOptions options = usage_checked([&] {
    BuildOptions o;
    if (!(a.threshold > 0.0 && a.threshold <= 1.0)) {
      throw std::invalid_argument("--threshold must lie in (0, 1]");
    }
    o.grouping.threshold = a.threshold;
    o.grouping.blocking = a.blocking;
    if (a.capital_default != "median") {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(a.capital_default, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != a.capital_default.size() || !(v >= 0.0)) {
        throw std::invalid_argument("--capital-default must be 'median' or a non-negative number");
      }
      o.missing_capital = {CapitalDefault::Kind::kFixed, v};
    }
    return o;
  });

  const TripletFile triplets = read_triplets_file(a.triplets);
  AttributeFile attrs;
  if (a.attrs) attrs = read_attributes_file(*a.attrs);
  for (const auto& e : triplets.bad_rows) {
    std::cerr << "warning: " << a.triplets << ":" << e.line << ": " << e.message << '\n';
  }
  for (const auto& e : attrs.bad_rows) {
    std::cerr << "warning: " << *a.attrs << ":" << e.line << ": " << e.message << '\n';
  }

  IngestResult result = build_network(triplets.triplets, attrs.capitals, options);
  result.report.bad_rows += attrs.bad_rows.size() + triplets.bad_rows.size();

  std::string report_path;
  if (a.report) {
    report_path = *a.report;
  } else {
    fs::path p(a.out);
    p.replace_extension(".report.json");
    report_path = p.string();
  }
  ensure_parent(a.out);
  save_network(result.network, a.out);
  write_output(report_path, dump_json(ingest_report_to_json(result.report)));
  std::cout << "firms=" << result.network.size() << " edges=" << result.network.edge_count()
            << " merged=" << result.report.merged << '\n';
  return kExitOk;
}

struct AnalyzeArgs {
  std::string net;
  bool lcc = false;
  std::uint64_t seed = 0;
  std::string out_dir;
};

std::string metrics_csv(const MetricTable& t) {
  std::string out = "firm,degree,closeness,betweenness,eigenvector,pagerank,clustering,triangles,capital\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    out += csv_escape(t.firm[i]);
    out += ',' + std::to_string(static_cast<long long>(t.degree[i]));
    for (const double v : {t.closeness[i], t.betweenness[i], t.eigenvector[i], t.pagerank[i],
                           t.clustering[i]}) {
      out += ',' + format_real(v);
    }
    out += ',' + std::to_string(static_cast<long long>(t.triangles[i]));
    out += ',' + format_real(t.capital[i]) + '\n';
  }
  return out;
}

Json correlation_rows(const MetricTable& table) {
  Json rows = Json::array();
  for (const auto kind : {CorrelationKind::kPearson, CorrelationKind::kSpearman}) {
    const CorrelationMatrix m = metric_correlation(table, kind);
    for (std::size_t i = 0; i < m.names.size(); ++i) {
      for (std::size_t j = 0; j < m.names.size(); ++j) {
        const auto v = m.at(i, j);
        rows.push_back({{"metric_a", m.names[i]},
                        {"metric_b", m.names[j]},
                        {"kind", kind == CorrelationKind::kPearson ? "pearson" : "spearman"},
                        {"value", v ? Json(*v) : Json(nullptr)}});
      }
    }
  }
  return rows;
}

int run_analyze(const AnalyzeArgs& a) {
  const SupplyNetwork net = load_input_network(a.net, a.lcc);
  if (!is_connected(net)) {
    throw std::runtime_error("'" + a.net + "' is disconnected; rerun with --lcc");
  }
  if (net.edge_count() == 0) throw std::runtime_error("'" + a.net + "' has no edges");
  const MetricTable table = compute_metrics(net);
  const PathStats paths = path_stats(net);
  const Partition communities = louvain(net, a.seed);
  const double q = modularity(net, communities);

  Json stats = {{"nodes", net.size()},
                {"edges", net.edge_count()},
                {"average_path_length", paths.average_path_length},
                {"diameter", paths.diameter},
                {"modularity", q},
                {"communities", communities.count},
                {"lcc", a.lcc},
                {"louvain_seed", a.seed}};

  const Distributions dist = degree_and_capital_distribution(net);
  Json degree = Json::array();
  for (const auto& [k, count] : dist.degree) degree.push_back({{"degree", k}, {"count", count}});
  Json capital = Json::array();
  for (const auto& bin : dist.capital) {
    capital.push_back({{"lower", bin.lower}, {"upper", bin.upper}, {"count", bin.count}});
  }
  Json distributions = {{"degree", degree},
                        {"zero_capital", dist.zero_capital},
                        {"capital_bins_per_decade", kCapitalBinsPerDecade},
                        {"capital", capital}};

  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  write_text_file((dir / "metrics.csv").string(), metrics_csv(table));
  write_text_file((dir / "stats.json").string(), dump_json(stats));
  write_text_file((dir / "correlation.json").string(), dump_json(correlation_rows(table)));
  write_text_file((dir / "distributions.json").string(), dump_json(distributions));
  std::cout << "nodes=" << net.size() << " edges=" << net.edge_count()
            << " average_path_length=" << format_real(paths.average_path_length)
            << " diameter=" << paths.diameter << " modularity=" << format_real(q) << '\n';
  return kExitOk;
}

struct GenerateArgs {
  std::vector<std::string> ba;
  std::vector<std::string> er;
  std::string capital = "pareto:2:50";
  std::uint64_t seed = 0;
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  const GenSpec spec = usage_checked([&] {
    GenSpec s;
    if (!a.ba.empty()) {
      s.model = parse_graph_model("ba:" + a.ba[0] + ":" + a.ba[1]);
    } else if (!a.er.empty()) {
      s.model = parse_graph_model("er:" + a.er[0] + ":" + a.er[1]);
    } else {
      throw std::invalid_argument("one of --ba or --er is required");
    }
    s.capital = parse_capital_model(a.capital);
    s.rng_seed = a.seed;
    return s;
  });
  const SupplyNetwork net = generate(spec);
  const fs::path dir(a.out);
  fs::create_directories(dir);
  std::ostringstream triplets;
  write_triplets(net, triplets);
  std::ostringstream attrs;
  write_attributes(net, attrs);
  write_text_file((dir / "triplets.csv").string(), triplets.str());
  write_text_file((dir / "attributes.csv").string(), attrs.str());
  save_network(net, (dir / "network.json").string());
  std::cout << "firms=" << net.size() << " edges=" << net.edge_count() << '\n';
  return kExitOk;
}

struct SimulateArgs {
  std::string net;
  bool lcc = false;
  std::string out;
  PlanFlags plan;
};

int run_simulate_rc(const SimulateArgs& a, const RcFlags& flags) {
  const RcConfig cfg = rc_from_flags(flags);
  const AttackPlan plan = plan_from_flags(a.plan);
  const SupplyNetwork net = load_input_network(a.net, a.lcc);
  const SimTrace trace = rc_run(net, cfg, plan);
  write_output(a.out, trace_csv(trace));
  print_run_summary(trace);
  return kExitOk;
}

int run_simulate_rt(const SimulateArgs& a, const RtFlags& flags) {
  const RtConfig cfg = rt_from_flags(flags);
  const AttackPlan plan = plan_from_flags(a.plan);
  const SupplyNetwork net = load_input_network(a.net, a.lcc);
  double min_positive = std::numeric_limits<double>::infinity();
  for (double c : net.log_capitals()) {
    if (c > 0.0) min_positive = std::min(min_positive, c);
  }
  if (cfg.c_floor >= min_positive) {
    std::cerr << "warning: c_floor " << format_real(cfg.c_floor)
              << " is not below the smallest positive capacity " << format_real(min_positive)
              << "; firms start at the floor and fail on first contact\n";
  }
  const SimTrace trace = rt_run(net, cfg, plan);
  write_output(a.out, trace_csv(trace));
  print_run_summary(trace);
  return kExitOk;
}

std::vector<double> default_ratios() {
  std::vector<double> r;
  for (int k = 1; k <= 20; ++k) r.push_back(k / 20.0);
  return r;
}

int run_sweep(const SimulateArgs& a, const RcFlags& flags, std::vector<double> ratios) {
  const RcConfig cfg = rc_from_flags(flags);
  const AttackPlan plan = plan_from_flags(a.plan);
  if (ratios.empty()) ratios = default_ratios();
  usage_checked([&] {
    for (std::size_t i = 0; i < ratios.size(); ++i) {
      if (!(ratios[i] > 0.0)) throw std::invalid_argument("--ratios must be positive");
      if (i > 0 && !(ratios[i] > ratios[i - 1])) {
        throw std::invalid_argument("--ratios must be strictly ascending");
      }
    }
    return 0;
  });
  const SupplyNetwork net = load_input_network(a.net, a.lcc);
  const SweepResult result = recovery_sweep(net, cfg, plan, ratios);
  std::string csv = "ratio,terminal_affected_ratio\n";
  for (const auto& p : result.points) {
    csv += format_real(p.ratio) + ',' + format_real(p.terminal_affected_ratio) + '\n';
  }
  write_output(a.out, csv);
  std::cout << "critical_ratio="
            << (result.critical_ratio ? format_real(*result.critical_ratio) : std::string("none"))
            << '\n';
  return kExitOk;
}

struct ReportArgs {
  std::string in;
  std::string out;
  std::optional<std::string> title;
};

int run_report(const ReportArgs& a) {
  const SeriesTable table = parse_series_csv(read_text_file(a.in));
  const std::string title = a.title.value_or(fs::path(a.in).filename().string());
  write_output(a.out, render_svg(table, title));
  return kExitOk;
}

struct ExperimentArgs {
  std::string spec;
  std::string out;
};

int run_experiment_command(const ExperimentArgs& a) {
  const Json doc = read_json_file(a.spec);
  const ExperimentSpec spec = usage_checked([&] {
    ExperimentSpec s = experiment_spec_from_json(doc);
    s.validate();
    return s;
  });
  NetworkSource source = spec.network;
  if (source.file && fs::path(*source.file).is_relative()) {
    source.file = (fs::path(a.spec).parent_path() / *source.file).string();
  }
  const SupplyNetwork net = resolve_network(source);
  const ExperimentResult result = run_experiment(spec, net);
  write_experiment(a.out, spec, result);
  std::size_t failed = 0;
  for (const auto& run : result.runs) {
    if (!run.error.empty()) {
      ++failed;
      std::cerr << "warning: point " << run.point << " replicate " << run.replicate << ": "
                << run.error << '\n';
    }
  }
  std::cout << "runs=" << result.runs.size() << " failed=" << failed << '\n';
  return kExitOk;
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
  configure_threads_from_env();

  CLI::App app{"Supply-chain cascade toolkit: ingest firm networks, analyze topology and "
               "simulate cascading failures"};
  app.name("soc-cascade");
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* c_ingest = app.add_subcommand("ingest", "Build a network from triplet and attribute CSVs");
  c_ingest->add_option("--triplets", ingest.triplets, "Triplet CSV (head,relation,tail,source)")->required();
  c_ingest->add_option("--attrs", ingest.attrs, "Attribute CSV (name,registered_capital)");
  c_ingest->add_option("--threshold", ingest.threshold, "Merge names with similarity above this")
      ->capture_default_str();
  c_ingest->add_flag("--blocking", ingest.blocking,
                     "Only compare names sharing a first character or a 2-gram");
  c_ingest->add_option("--capital-default", ingest.capital_default,
                       "Capital for firms without an attribute row: 'median' or a number")
      ->capture_default_str();
  c_ingest->add_option("--out", ingest.out, "Network JSON to write")->required();
  c_ingest->add_option("--report", ingest.report, "Ingest report JSON (default <out>.report.json)");

  AnalyzeArgs analyze;
  auto* c_analyze = app.add_subcommand("analyze", "Metric table, network statistics and correlations");
  c_analyze->add_option("--net", analyze.net, "Network JSON")->required();
  c_analyze->add_flag("--lcc", analyze.lcc, "Analyze the largest connected component");
  c_analyze->add_option("--seed", analyze.seed, "Louvain seed")->capture_default_str();
  c_analyze->add_option("--out-dir", analyze.out_dir,
                        "Directory for metrics.csv, stats.json, correlation.json, distributions.json")
      ->required();

  GenerateArgs gen;
  auto* c_gen = app.add_subcommand("generate", "Synthetic network with capitals");
  auto* o_ba = c_gen->add_option("--ba", gen.ba, "Barabasi-Albert graph with N firms, M links per new firm")
                   ->expected(2)
                   ->type_name("N M");
  auto* o_er = c_gen->add_option("--er", gen.er, "Erdos-Renyi graph with N firms and edge probability P")
                   ->expected(2)
                   ->type_name("N P");
  o_ba->excludes(o_er);
  c_gen->add_option("--capital", gen.capital,
                    "pareto:<alpha>:<scale>, lognormal:<mu>:<sigma> or constant:<value>")
      ->capture_default_str();
  c_gen->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
  c_gen->add_option("--out", gen.out, "Directory for triplets.csv, attributes.csv, network.json")
      ->required();

  SimulateArgs rc_args;
  RcFlags rc_flags;
  auto* c_rc = app.add_subcommand("simulate-rc", "Recovery-capacity cascade run");
  c_rc->add_option("--net", rc_args.net, "Network JSON")->required();
  c_rc->add_flag("--lcc", rc_args.lcc, "Run on the largest connected component");
  add_rc_flags(c_rc, rc_flags, true);
  add_plan_flags(c_rc, rc_args.plan, "--seed,--attack-seed");
  c_rc->add_option("--out", rc_args.out, "Trace CSV (step,affected_ratio)")->required();

  SimulateArgs rt_args;
  RtFlags rt_flags;
  auto* c_rt = app.add_subcommand("simulate-rt", "Risk-transfer cascade run");
  c_rt->add_option("--net", rt_args.net, "Network JSON")->required();
  c_rt->add_flag("--lcc", rt_args.lcc, "Run on the largest connected component");
  add_rt_flags(c_rt, rt_flags);
  add_plan_flags(c_rt, rt_args.plan, "--attack-seed");
  c_rt->add_option("--out", rt_args.out, "Trace CSV (step,affected_ratio,capacity_ratio)")->required();

  SimulateArgs sweep_args;
  RcFlags sweep_flags;
  std::vector<double> ratios;
  auto* c_sweep = app.add_subcommand("sweep", "Terminal affected ratio against mu / lambda");
  c_sweep->add_option("--net", sweep_args.net, "Network JSON")->required();
  c_sweep->add_flag("--lcc", sweep_args.lcc, "Run on the largest connected component");
  add_rc_flags(c_sweep, sweep_flags, false);
  add_plan_flags(c_sweep, sweep_args.plan, "--seed,--attack-seed");
  c_sweep->add_option("--ratios", ratios, "Ascending mu / lambda values (default 0.05,0.1,...,1)")
      ->delimiter(',');
  c_sweep->add_option("--out", sweep_args.out, "Sweep CSV (ratio,terminal_affected_ratio)")->required();

  ReportArgs report;
  auto* c_report = app.add_subcommand("report", "Render a trace or sweep CSV as an SVG line chart");
  c_report->add_option("--in", report.in, "Input CSV")->required();
  c_report->add_option("--out", report.out, "Output SVG")->required();
  c_report->add_option("--title", report.title, "Chart title (default: input file name)");

  ExperimentArgs exp;
  auto* c_exp = app.add_subcommand("experiment", "Replicated parameter sweep from a JSON spec");
  c_exp->add_option("--spec", exp.spec, "Experiment spec JSON")->required();
  c_exp->add_option("--out", exp.out, "Result directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c_ingest->parsed()) return run_ingest(ingest);
    if (c_analyze->parsed()) return run_analyze(analyze);
    if (c_gen->parsed()) return run_generate(gen);
    if (c_rc->parsed()) return run_simulate_rc(rc_args, rc_flags);
    if (c_rt->parsed()) return run_simulate_rt(rt_args, rt_flags);
    if (c_sweep->parsed()) return run_sweep(sweep_args, sweep_flags, ratios);
    if (c_report->parsed()) return run_report(report);
    if (c_exp->parsed()) return run_experiment_command(exp);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace soc_cascade::cli
