#pragma once

// Risk-transfer interaction-disruption model: binary firm states with
// stochastic failure and capacity bookkeeping.
//
// An alive firm fails with probability equal to the failed share of its
// neighbors, or deterministically once its capacity sits at the floor while
// at least one neighbor has failed. A newly failed firm either bears the
// capacity loss itself (absorb) or pushes attenuated losses onto its alive
// neighbors (transfer).

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "soc_cascade/attack.hpp"
#include "soc_cascade/graph.hpp"
#include "soc_cascade/rc_idm.hpp"
#include "soc_cascade/trace.hpp"

namespace soc_cascade {

enum class RtPolicy { kAbsorb, kTransfer, kRandom };

std::string_view to_string(RtPolicy p);
RtPolicy parse_rt_policy(std::string_view text);  // "absorb" | "transfer" | "random"

struct RtConfig {
  RtPolicy policy = RtPolicy::kTransfer;
  double p_absorb = 0.5;  // kRandom: chance a failing firm absorbs
  double delta_c = 2.0;
  double c_floor = 0.1;
  BetaMode beta = BetaMode::degree_normalized();
  std::uint32_t tau = 1;
  std::uint32_t max_steps = 500;
  std::uint64_t rng_seed = 0;
  /// Swaps which capacity rule each policy applies (absorb decrements the
  /// neighbors, transfer decrements the firm itself).
  bool swap_capacity_rules = false;

  void validate() const;
};

enum class PolicyChoice : std::uint8_t { kNone, kAbsorb, kTransfer };

struct RtState {
  std::vector<std::uint8_t> failed;
  std::vector<double> capacity;
  std::vector<PolicyChoice> choice;  // fixed when the firm fails
};

/// Literal ratio: sum of neighbor states over (sum over failed neighbors of
/// s_j) + (sum over alive neighbors of s_j + 1). 0 for an isolated firm.
double failure_probability_literal(const SupplyNetwork& net, std::span<const std::uint8_t> failed,
                                   FirmId firm);

/// Failed neighbors / neighbors. 0 for an isolated firm.
double failed_neighbor_fraction(const SupplyNetwork& net, std::span<const std::uint8_t> failed,
                                FirmId firm);

/// Evaluates both forms, checks they agree exactly and returns the value.
double failure_probability(const SupplyNetwork& net, std::span<const std::uint8_t> failed,
                           FirmId firm);

struct RtDynamics {
  const SupplyNetwork* net = nullptr;
  RtConfig config;
  std::vector<double> beta;  // per arc, aligned with the adjacency
  std::vector<double> initial_capacity;

  RtDynamics(const SupplyNetwork& network, const RtConfig& cfg);

  /// Capacity rule a failing firm applies, after the optional swap.
  bool decrements_self(PolicyChoice choice) const;
};

/// Capacity loss caused by one failure. Absorb: c_i = max(c_floor, c_i - delta_c).
/// Transfer: for each alive neighbor j, c_j = max(c_floor, c_j - beta_ij * delta_c)
/// where beta_ij is the weight of i acting on j. `state.choice[failed_firm]`
/// must already be set.
void apply_capacity_update(const RtDynamics& dyn, RtState& state, FirmId failed_firm);

/// Policy a firm failing at `step` adopts; kRandom draws it from the
/// counter-based stream keyed by (rng_seed, step, firm).
PolicyChoice draw_policy(const RtConfig& config, std::uint32_t step, FirmId firm);

/// Uniform draw deciding whether `firm` fails at `step`.
double failure_draw(const RtConfig& config, std::uint32_t step, FirmId firm);

/// Marks `newly_failed` (ascending) as failed at `step`, fixes their policy
/// and applies the accumulated capacity losses, each target clamped once.
void fail_firms(const RtDynamics& dyn, RtState& state, std::span<const FirmId> newly_failed,
                std::uint32_t step);

/// One synchronous update at `step` from history (oldest first, at least
/// tau entries); judges on history[size - tau], keeps absorption and
/// capacities from history.back().
RtState rt_step(const RtDynamics& dyn, std::span<const RtState> history, std::uint32_t step);

/// Seeds fail at step 0 and apply their capacity losses. Stops when every
/// firm has failed (saturated), when no alive firm borders a failed one so
/// nothing can change again (converged), or at max_steps. capacity_ratio is
/// total capacity over the pre-seeding total.
SimTrace rt_run(const SupplyNetwork& net, const RtConfig& config, const AttackPlan& plan);
SimTrace rt_run(const SupplyNetwork& net, const RtConfig& config, std::span<const FirmId> seeds);

}  // namespace soc_cascade
