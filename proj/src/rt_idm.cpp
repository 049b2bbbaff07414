#include "soc_cascade/rt_idm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "soc_cascade/rng.hpp"

namespace soc_cascade {

namespace {

constexpr std::uint64_t kFailureStream = 0;
constexpr std::uint64_t kPolicyStream = 1;

}  // namespace

std::string_view to_string(RtPolicy p) {
  switch (p) {
    case RtPolicy::kAbsorb: return "absorb";
    case RtPolicy::kTransfer: return "transfer";
    case RtPolicy::kRandom: return "random";
  }
  return "?";
}

RtPolicy parse_rt_policy(std::string_view text) {
  if (text == "absorb") return RtPolicy::kAbsorb;
  if (text == "transfer") return RtPolicy::kTransfer;
  if (text == "random") return RtPolicy::kRandom;
  throw std::invalid_argument("policy must be 'absorb', 'transfer' or 'random', got '" +
                              std::string(text) + "'");
}

void RtConfig::validate() const {
  if (!(p_absorb >= 0.0 && p_absorb <= 1.0)) throw std::invalid_argument("p_absorb must lie in [0, 1]");
  if (!(delta_c > 0.0) || !std::isfinite(delta_c)) throw std::invalid_argument("delta_c must be > 0");
  if (!(c_floor >= 0.0) || !std::isfinite(c_floor)) throw std::invalid_argument("c_floor must be >= 0");
  if (tau == 0) throw std::invalid_argument("tau must be positive");
  if (max_steps == 0) throw std::invalid_argument("max_steps must be positive");
  if (beta.kind == BetaMode::Kind::kUniform && !(beta.uniform >= 0.0 && beta.uniform <= 1.0)) {
    throw std::invalid_argument("uniform beta must lie in [0, 1]");
  }
}

double failure_probability_literal(const SupplyNetwork& net, std::span<const std::uint8_t> failed,
                                   FirmId firm) {
  const auto adj = net.neighbors(firm);
  if (adj.empty()) return 0.0;
  double numerator = 0.0;
  double failed_part = 0.0;
  double alive_part = 0.0;
  for (FirmId j : adj) {
    const double s = failed[j] ? 1.0 : 0.0;
    numerator += s;
    if (s == 1.0) {
      failed_part += s;
    } else {
      alive_part += s + 1.0;
    }
  }
  return numerator / (failed_part + alive_part);
}

double failed_neighbor_fraction(const SupplyNetwork& net, std::span<const std::uint8_t> failed,
                                FirmId firm) {
  const auto adj = net.neighbors(firm);
  if (adj.empty()) return 0.0;
  std::size_t count = 0;
  for (FirmId j : adj) count += failed[j] ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(adj.size());
}

double failure_probability(const SupplyNetwork& net, std::span<const std::uint8_t> failed,
                           FirmId firm) {
  const double literal = failure_probability_literal(net, failed, firm);
  const double fraction = failed_neighbor_fraction(net, failed, firm);
  if (literal != fraction) {
    throw std::logic_error("failure_probability: closed forms disagree for firm " +
                           std::to_string(firm));
  }
  return literal;
}

RtDynamics::RtDynamics(const SupplyNetwork& network, const RtConfig& cfg)
    : net(&network), config(cfg) {
  config.validate();
  beta = beta_weights(network, config.beta);
  initial_capacity = network.log_capitals();
  for (double& c : initial_capacity) c = std::max(c, config.c_floor);
}

bool RtDynamics::decrements_self(PolicyChoice choice) const {
  const bool absorb = choice == PolicyChoice::kAbsorb;
  return config.swap_capacity_rules ? !absorb : absorb;
}

namespace {

// Weight of `source` acting on `target` (source must neighbor target).
double arc_weight(const RtDynamics& dyn, FirmId target, FirmId source) {
  const auto adj = dyn.net->neighbors(target);
  const auto it = std::lower_bound(adj.begin(), adj.end(), source);
  return dyn.beta[dyn.net->adjacency_offset(target) + static_cast<std::size_t>(it - adj.begin())];
}

void add_losses(const RtDynamics& dyn, const RtState& state, FirmId failed_firm,
                std::vector<double>& loss) {
  const double dc = dyn.config.delta_c;
  if (dyn.decrements_self(state.choice[failed_firm])) {
    loss[failed_firm] += dc;
    return;
  }
  for (FirmId j : dyn.net->neighbors(failed_firm)) {
    if (!state.failed[j]) loss[j] += arc_weight(dyn, j, failed_firm) * dc;
  }
}

void settle(const RtDynamics& dyn, RtState& state, const std::vector<double>& loss) {
  for (std::size_t i = 0; i < loss.size(); ++i) {
    if (loss[i] > 0.0) state.capacity[i] = std::max(dyn.config.c_floor, state.capacity[i] - loss[i]);
  }
}

}  // namespace

void apply_capacity_update(const RtDynamics& dyn, RtState& state, FirmId failed_firm) {
  std::vector<double> loss(state.capacity.size(), 0.0);
  add_losses(dyn, state, failed_firm, loss);
  settle(dyn, state, loss);
}

PolicyChoice draw_policy(const RtConfig& config, std::uint32_t step, FirmId firm) {
  switch (config.policy) {
    case RtPolicy::kAbsorb: return PolicyChoice::kAbsorb;
    case RtPolicy::kTransfer: return PolicyChoice::kTransfer;
    case RtPolicy::kRandom:
      return counter_uniform(config.rng_seed, step, firm, kPolicyStream) < config.p_absorb
                 ? PolicyChoice::kAbsorb
                 : PolicyChoice::kTransfer;
  }
  return PolicyChoice::kNone;
}

double failure_draw(const RtConfig& config, std::uint32_t step, FirmId firm) {
  return counter_uniform(config.rng_seed, step, firm, kFailureStream);
}

void fail_firms(const RtDynamics& dyn, RtState& state, std::span<const FirmId> newly_failed,
                std::uint32_t step) {
  for (FirmId f : newly_failed) {
    state.failed[f] = 1;
    state.choice[f] = draw_policy(dyn.config, step, f);
  }
  std::vector<double> loss(state.capacity.size(), 0.0);
  for (FirmId f : newly_failed) add_losses(dyn, state, f, loss);
  settle(dyn, state, loss);
}

RtState rt_step(const RtDynamics& dyn, std::span<const RtState> history, std::uint32_t step) {
  const RtConfig& cfg = dyn.config;
  if (history.size() < cfg.tau) throw std::invalid_argument("rt_step: history shorter than tau");
  const RtState& lagged = history[history.size() - cfg.tau];
  const RtState& latest = history.back();
  const SupplyNetwork& net = *dyn.net;
  const auto n = static_cast<std::int64_t>(net.size());

  std::vector<std::uint8_t> fails(net.size(), 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t vi = 0; vi < n; ++vi) {
    const auto i = static_cast<FirmId>(vi);
    if (latest.failed[i]) continue;
    const double p = failure_probability(net, lagged.failed, i);
    const bool bankrupt = p > 0.0 && latest.capacity[i] <= cfg.c_floor;
    fails[i] = (bankrupt || failure_draw(cfg, step, i) < p) ? 1 : 0;
  }

  std::vector<FirmId> newly;
  for (FirmId i = 0; i < net.size(); ++i) {
    if (fails[i]) newly.push_back(i);
  }
  RtState next = latest;
  fail_firms(dyn, next, newly, step);
  return next;
}

SimTrace rt_run(const SupplyNetwork& net, const RtConfig& config, const AttackPlan& plan) {
  const auto seeds = select_seeds(net, plan);
  return rt_run(net, config, seeds);
}

SimTrace rt_run(const SupplyNetwork& net, const RtConfig& config, std::span<const FirmId> seeds) {
  const RtDynamics dyn(net, config);
  const std::size_t n = net.size();
  SimTrace trace;

  RtState state{std::vector<std::uint8_t>(n, 0), dyn.initial_capacity,
                std::vector<PolicyChoice>(n, PolicyChoice::kNone)};
  const double total0 = std::accumulate(dyn.initial_capacity.begin(), dyn.initial_capacity.end(), 0.0);

  std::vector<FirmId> initial(seeds.begin(), seeds.end());
  std::sort(initial.begin(), initial.end());
  initial.erase(std::unique(initial.begin(), initial.end()), initial.end());
  for (FirmId s : initial) {
    if (s >= n) throw std::invalid_argument("rt_run: seed outside the network");
  }
  fail_firms(dyn, state, initial, 0);

  const auto record = [&](std::uint32_t step, const RtState& st) {
    const auto failed = static_cast<double>(std::count(st.failed.begin(), st.failed.end(), 1));
    const double total = std::accumulate(st.capacity.begin(), st.capacity.end(), 0.0);
    trace.steps.push_back({step, n ? failed / static_cast<double>(n) : 0.0,
                           total0 > 0.0 ? total / total0 : 0.0});
  };
  const auto saturated = [](const RtState& st) {
    return std::all_of(st.failed.begin(), st.failed.end(), [](auto f) { return f != 0; });
  };
  const auto frozen = [&](const RtState& st) {
    for (FirmId i = 0; i < n; ++i) {
      if (st.failed[i]) continue;
      for (FirmId j : net.neighbors(i)) {
        if (st.failed[j]) return false;
      }
    }
    return true;
  };

  record(0, state);
  if (saturated(state)) {
    trace.reason = TerminalReason::kSaturated;
    return trace;
  }
  if (frozen(state)) {
    trace.reason = TerminalReason::kConverged;
    return trace;
  }

  std::vector<RtState> history(config.tau, state);
  for (std::uint32_t t = 1; t <= config.max_steps; ++t) {
    RtState next = rt_step(dyn, history, t);
    record(t, next);
    history.erase(history.begin());
    history.push_back(std::move(next));
    if (saturated(history.back())) {
      trace.reason = TerminalReason::kSaturated;
      return trace;
    }
    if (frozen(history.back())) {
      trace.reason = TerminalReason::kConverged;
      return trace;
    }
  }
  trace.reason = TerminalReason::kMaxSteps;
  return trace;
}

}  // namespace soc_cascade
