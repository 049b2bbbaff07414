#pragma once

// Recovery-capacity interaction-disruption model: continuous firm states in
// [0, 1] driven by neighbor influence and self-recovery.
//
//   s_i(t) = s_i(t-tau) + delta * ( lambda * (1 - s_i(t-tau)) * sum_j beta_ji s_j(t-tau)
//                                  - mu * r_i(t-tau) )
//
// with r_i = s_i (literal form) or s_i scaled by normalized log capital.
// Firms at s = 1 are absorbed and never change again.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "soc_cascade/attack.hpp"
#include "soc_cascade/graph.hpp"
#include "soc_cascade/trace.hpp"

namespace soc_cascade {

/// Weight beta_ji of neighbor j's influence on firm i.
struct BetaMode {
  enum class Kind { kUniform, kDegreeNormalized, kCapitalWeighted };
  Kind kind = Kind::kDegreeNormalized;
  double uniform = 1.0;  // used by kUniform, in [0, 1]

  static BetaMode uniform_value(double beta) { return {Kind::kUniform, beta}; }
  static BetaMode degree_normalized() { return {Kind::kDegreeNormalized, 1.0}; }
  static BetaMode capital_weighted() { return {Kind::kCapitalWeighted, 1.0}; }
};

std::string to_string(const BetaMode& mode);
/// "degree", "capital", or "uniform:<beta>".
BetaMode parse_beta_mode(std::string_view text);

/// Per-arc weights aligned with the adjacency: entry
/// net.adjacency_offset(i) + k is the weight of neighbors(i)[k] acting on i.
/// kUniform: beta; kDegreeNormalized: 1 / deg(i); kCapitalWeighted:
/// log_capital(j) / sum of log_capital over N(i). Throws
/// std::invalid_argument for a capital-weighted neighborhood with zero total.
std::vector<double> beta_weights(const SupplyNetwork& net, const BetaMode& mode);

enum class RecoveryMode { kState, kCapitalScaled };

std::string_view to_string(RecoveryMode m);
RecoveryMode parse_recovery_mode(std::string_view text);  // "state" | "capital"

/// Multiplier on s_i in the recovery term: 1 for kState; for kCapitalScaled
/// (1 + c_i - c_min) / (1 + c_max - c_min) over log capitals, which lies in
/// (0, 1].
std::vector<double> recovery_scale(const SupplyNetwork& net, RecoveryMode mode);

struct RcConfig {
  double lambda = 0.5;
  double mu = 0.1;
  double delta = 1.0;
  std::uint32_t tau = 1;
  BetaMode beta;
  RecoveryMode recovery = RecoveryMode::kState;
  double threshold = 0.5;  // affected means s > threshold
  std::uint32_t max_steps = 500;
  double convergence_eps = 1e-6;
  bool record_states = false;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;
};

struct RcState {
  std::vector<double> s;
  std::vector<std::uint8_t> absorbed;

  static RcState zeros(std::size_t n) { return {std::vector<double>(n, 0.0), std::vector<std::uint8_t>(n, 0)}; }
};

/// Network, config and the precomputed per-arc and per-firm factors.
struct RcDynamics {
  const SupplyNetwork* net = nullptr;
  RcConfig config;
  std::vector<double> beta;
  std::vector<double> recovery;

  RcDynamics(const SupplyNetwork& network, const RcConfig& cfg);
};

/// One synchronous update. `history` holds the most recent states, oldest
/// first, at least tau of them; the update reads history[size - tau] and
/// absorption is taken from history.back(). OpenMP-parallel over firms.
RcState rc_step(const RcDynamics& dyn, std::span<const RcState> history);

/// Seeds start absorbed at s = 1. Stops when max |delta s| < convergence_eps
/// (converged), when every firm is absorbed (saturated), or at max_steps.
SimTrace rc_run(const SupplyNetwork& net, const RcConfig& config, const AttackPlan& plan);
SimTrace rc_run(const SupplyNetwork& net, const RcConfig& config, std::span<const FirmId> seeds);

/// Terminal ratio below which the network counts as still functioning.
inline constexpr double kFunctioningAffectedRatio = 0.05;

struct SweepPoint {
  double ratio = 0.0;  // mu / lambda
  double terminal_affected_ratio = 0.0;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  /// Smallest swept ratio with terminal ratio < kFunctioningAffectedRatio.
  std::optional<double> critical_ratio;
};

/// Runs rc_run with mu = ratio * lambda for each ratio (positive, ascending);
/// ratios run in parallel.
SweepResult recovery_sweep(const SupplyNetwork& net, const RcConfig& base, const AttackPlan& plan,
                           std::span<const double> ratios);

}  // namespace soc_cascade
