#pragma once

// Replicated, parameter-swept cascade campaigns.
//
// Runs are indexed by (point, replicate) where a point is one grid
// combination paired with one attack plan. Each run's seed is
// hash(master_seed, point, replicate), so adding replicates or points never
// changes the seeds of existing runs.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "soc_cascade/attack.hpp"
#include "soc_cascade/io.hpp"
#include "soc_cascade/synth.hpp"
#include "soc_cascade/trace.hpp"

namespace soc_cascade {

enum class ModelKind { kRc, kRt };

struct NetworkSource {
  std::optional<std::string> file;  // network JSON
  std::optional<GenSpec> generate;  // used when no file is given
  bool lcc = true;
};

struct GridAxis {
  std::string key;
  std::vector<Json> values;
};

struct ExperimentSpec {
  NetworkSource network;
  ModelKind model = ModelKind::kRc;
  Json base_config = Json::object();  // RcConfig or RtConfig fields
  std::vector<GridAxis> grid;         // sorted by key
  std::vector<AttackPlan> plans;
  std::size_t replicates = 1;
  std::uint64_t master_seed = 0;

  /// Throws std::invalid_argument on bad keys, empty axes, no plans or zero
  /// replicates.
  void validate() const;
};

/// Grid keys accepted for each model. RC additionally accepts
/// "mu_over_lambda", applied after the other keys.
std::vector<std::string> grid_keys(ModelKind model);

ExperimentSpec experiment_spec_from_json(const Json& doc);
Json experiment_spec_to_json(const ExperimentSpec& spec);

SupplyNetwork resolve_network(const NetworkSource& source);

/// Cartesian product of the axes in key order, last axis fastest. Each
/// entry maps key -> value.
std::vector<Json> grid_points(const ExperimentSpec& spec);

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t point, std::size_t replicate);

struct RunResult {
  std::size_t point = 0;
  std::size_t replicate = 0;
  std::uint64_t seed = 0;
  Json config;  // fully resolved model config
  Json plan;
  std::vector<FirmId> seeds;
  std::optional<SimTrace> trace;
  std::string error;  // set when the run failed
};

struct ExperimentResult {
  std::vector<Json> points;  // grid values per grid index
  std::vector<RunResult> runs;  // ordered by (point, replicate)
};

/// Executes every run; runs execute in parallel and come back in index
/// order. A failing run is recorded, not rethrown.
ExperimentResult run_experiment(const ExperimentSpec& spec, const SupplyNetwork& net);

struct PointSummary {
  std::size_t point = 0;
  std::string param_values;
  std::string plan;
  std::size_t ok_runs = 0;
  std::size_t failed_runs = 0;
  /// Terminal affected ratio over successful runs (population std).
  double mean_terminal = 0.0;
  double std_terminal = 0.0;
  double min_terminal = 0.0;
  double max_terminal = 0.0;
  /// Mean first step with affected ratio >= 0.5 over runs that got there.
  std::optional<double> mean_t_half;
  std::size_t n_never = 0;

  bool missing() const { return ok_runs == 0; }
};

std::vector<PointSummary> summarize(const ExperimentSpec& spec, const ExperimentResult& result);

/// `point,param_values,plan,mean_terminal,std_terminal,mean_t_half,n_never`
std::string summary_csv(const std::vector<PointSummary>& rows);

/// Writes spec.json, runs/<point>/<replicate>/{trace.csv,run.json},
/// summary.csv and summary.json under `dir`.
void write_experiment(const std::string& dir, const ExperimentSpec& spec,
                      const ExperimentResult& result);

}  // namespace soc_cascade
