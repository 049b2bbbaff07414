#include "soc_cascade/rc_idm.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace soc_cascade {

std::string to_string(const BetaMode& mode) {
  switch (mode.kind) {
    case BetaMode::Kind::kDegreeNormalized: return "degree";
    case BetaMode::Kind::kCapitalWeighted: return "capital";
    case BetaMode::Kind::kUniform: return "uniform:" + format_real(mode.uniform);
  }
  return "?";
}

BetaMode parse_beta_mode(std::string_view text) {
  if (text == "degree") return BetaMode::degree_normalized();
  if (text == "capital") return BetaMode::capital_weighted();
  if (text.starts_with("uniform:")) {
    const std::string_view number = text.substr(8);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
    if (ec == std::errc{} && end == number.data() + number.size() && value >= 0.0 && value <= 1.0) {
      return BetaMode::uniform_value(value);
    }
  }
  throw std::invalid_argument("beta mode must be 'degree', 'capital' or 'uniform:<0..1>', got '" +
                              std::string(text) + "'");
}

std::string_view to_string(RecoveryMode m) {
  return m == RecoveryMode::kState ? "state" : "capital";
}

RecoveryMode parse_recovery_mode(std::string_view text) {
  if (text == "state") return RecoveryMode::kState;
  if (text == "capital") return RecoveryMode::kCapitalScaled;
  throw std::invalid_argument("recovery mode must be 'state' or 'capital', got '" +
                              std::string(text) + "'");
}

std::vector<double> beta_weights(const SupplyNetwork& net, const BetaMode& mode) {
  std::vector<double> out(2 * net.edge_count());
  const auto logc = net.log_capitals();
  for (FirmId i = 0; i < net.size(); ++i) {
    const auto adj = net.neighbors(i);
    const std::size_t base = net.adjacency_offset(i);
    switch (mode.kind) {
      case BetaMode::Kind::kUniform:
        if (!(mode.uniform >= 0.0 && mode.uniform <= 1.0)) {
          throw std::invalid_argument("uniform beta must lie in [0, 1]");
        }
        std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(base), adj.size(), mode.uniform);
        break;
      case BetaMode::Kind::kDegreeNormalized:
        std::fill_n(out.begin() + static_cast<std::ptrdiff_t>(base), adj.size(),
                    1.0 / static_cast<double>(adj.size()));
        break;
      case BetaMode::Kind::kCapitalWeighted: {
        double total = 0.0;
        for (FirmId j : adj) total += logc[j];
        if (!adj.empty() && !(total > 0.0)) {
          throw std::invalid_argument("capital-weighted beta: neighbors of '" +
                                      net.firm(i).canonical_name + "' have zero total capital");
        }
        for (std::size_t k = 0; k < adj.size(); ++k) out[base + k] = logc[adj[k]] / total;
        break;
      }
    }
  }
  return out;
}

std::vector<double> recovery_scale(const SupplyNetwork& net, RecoveryMode mode) {
  std::vector<double> out(net.size(), 1.0);
  if (mode == RecoveryMode::kState || net.empty()) return out;
  const auto logc = net.log_capitals();
  const auto [lo, hi] = std::minmax_element(logc.begin(), logc.end());
  const double span = 1.0 + (*hi - *lo);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (1.0 + logc[i] - *lo) / span;
  return out;
}

void RcConfig::validate() const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be >= 0");
  if (!(mu >= 0.0 && mu <= 1.0)) throw std::invalid_argument("mu must lie in [0, 1]");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("delta must be > 0");
  if (tau == 0) throw std::invalid_argument("tau must be positive");
  if (!(threshold >= 0.0 && threshold < 1.0)) throw std::invalid_argument("threshold must lie in [0, 1)");
  if (max_steps == 0) throw std::invalid_argument("max_steps must be positive");
  if (!(convergence_eps > 0.0)) throw std::invalid_argument("convergence_eps must be > 0");
  if (beta.kind == BetaMode::Kind::kUniform && !(beta.uniform >= 0.0 && beta.uniform <= 1.0)) {
    throw std::invalid_argument("uniform beta must lie in [0, 1]");
  }
}

RcDynamics::RcDynamics(const SupplyNetwork& network, const RcConfig& cfg)
    : net(&network), config(cfg) {
  config.validate();
  beta = beta_weights(network, config.beta);
  recovery = recovery_scale(network, config.recovery);
}

RcState rc_step(const RcDynamics& dyn, std::span<const RcState> history) {
  const RcConfig& cfg = dyn.config;
  if (history.size() < cfg.tau) throw std::invalid_argument("rc_step: history shorter than tau");
  const RcState& lagged = history[history.size() - cfg.tau];
  const RcState& latest = history.back();
  const SupplyNetwork& net = *dyn.net;
  const auto n = static_cast<std::int64_t>(net.size());
  RcState next{std::vector<double>(net.size()), std::vector<std::uint8_t>(net.size())};

#pragma omp parallel for schedule(static)
  for (std::int64_t vi = 0; vi < n; ++vi) {
    const auto i = static_cast<FirmId>(vi);
    if (latest.absorbed[i]) {
      next.s[i] = 1.0;
      next.absorbed[i] = 1;
      continue;
    }
    const double si = lagged.s[i];
    const auto adj = net.neighbors(i);
    const double* beta = dyn.beta.data() + net.adjacency_offset(i);
    double pressure = 0.0;
    for (std::size_t k = 0; k < adj.size(); ++k) pressure += beta[k] * lagged.s[adj[k]];
    const double drift =
        cfg.lambda * (1.0 - si) * pressure - cfg.mu * si * dyn.recovery[i];
    const double value = std::clamp(si + cfg.delta * drift, 0.0, 1.0);
    next.s[i] = value;
    next.absorbed[i] = value >= 1.0 ? 1 : 0;
  }
  return next;
}

SimTrace rc_run(const SupplyNetwork& net, const RcConfig& config, const AttackPlan& plan) {
  const auto seeds = select_seeds(net, plan);
  return rc_run(net, config, seeds);
}

SimTrace rc_run(const SupplyNetwork& net, const RcConfig& config, std::span<const FirmId> seeds) {
  const RcDynamics dyn(net, config);
  const std::size_t n = net.size();
  SimTrace trace;
  if (n == 0) {
    trace.steps.push_back({0, 0.0, std::nullopt});
    trace.reason = TerminalReason::kSaturated;
    return trace;
  }

  RcState initial = RcState::zeros(n);
  for (FirmId s : seeds) {
    if (s >= n) throw std::invalid_argument("rc_run: seed outside the network");
    initial.s[s] = 1.0;
    initial.absorbed[s] = 1;
  }

  const auto record = [&](std::uint32_t step, const RcState& state) {
    std::size_t affected = 0;
    for (double v : state.s) affected += v > config.threshold ? 1 : 0;
    trace.steps.push_back({step, static_cast<double>(affected) / static_cast<double>(n), std::nullopt});
    if (config.record_states) trace.snapshots.push_back(state.s);
  };

  record(0, initial);
  const auto all_absorbed = [](const RcState& st) {
    return std::all_of(st.absorbed.begin(), st.absorbed.end(), [](auto a) { return a != 0; });
  };
  if (all_absorbed(initial)) {
    trace.reason = TerminalReason::kSaturated;
    return trace;
  }

  std::vector<RcState> history(config.tau, initial);
  for (std::uint32_t t = 1; t <= config.max_steps; ++t) {
    RcState next = rc_step(dyn, history);
    const RcState& prev = history.back();
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change = std::max(change, std::abs(next.s[i] - prev.s[i]));
    record(t, next);
    const bool saturated = all_absorbed(next);
    history.erase(history.begin());
    history.push_back(std::move(next));
    if (saturated) {
      trace.reason = TerminalReason::kSaturated;
      return trace;
    }
    if (change < config.convergence_eps) {
      trace.reason = TerminalReason::kConverged;
      return trace;
    }
  }
  trace.reason = TerminalReason::kMaxSteps;
  return trace;
}

SweepResult recovery_sweep(const SupplyNetwork& net, const RcConfig& base, const AttackPlan& plan,
                           std::span<const double> ratios) {
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (!(ratios[i] > 0.0)) throw std::invalid_argument("recovery_sweep: ratios must be positive");
    if (i > 0 && !(ratios[i] > ratios[i - 1])) {
      throw std::invalid_argument("recovery_sweep: ratios must be ascending");
    }
  }
  const auto seeds = select_seeds(net, plan);
  SweepResult result;
  result.points.resize(ratios.size());
  std::vector<std::string> errors(ratios.size());
  const auto count = static_cast<std::int64_t>(ratios.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t k = 0; k < count; ++k) {
    RcConfig cfg = base;
    cfg.mu = ratios[k] * base.lambda;
    try {
      const auto trace = rc_run(net, cfg, seeds);
      result.points[k] = {ratios[k], trace.terminal_affected_ratio()};
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  }
  for (std::size_t k = 0; k < errors.size(); ++k) {
    if (!errors[k].empty()) {
      throw std::invalid_argument("recovery_sweep at ratio " + format_real(ratios[k]) + ": " +
                                  errors[k]);
    }
  }
  for (const auto& p : result.points) {
    if (p.terminal_affected_ratio < kFunctioningAffectedRatio) {
      result.critical_ratio = p.ratio;
      break;
    }
  }
  return result;
}

}  // namespace soc_cascade
