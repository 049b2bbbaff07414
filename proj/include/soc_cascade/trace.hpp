#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace soc_cascade {

enum class TerminalReason { kConverged, kMaxSteps, kSaturated };

std::string_view to_string(TerminalReason r);

struct TraceStep {
  std::uint32_t step = 0;
  double affected_ratio = 0.0;
  std::optional<double> capacity_ratio;  // RT-IDM only
};

/// Per-step output of one cascade run. Step 0 is the seeded state.
struct SimTrace {
  std::vector<TraceStep> steps;
  TerminalReason reason = TerminalReason::kMaxSteps;
  /// Full state per step when requested by the model config.
  std::vector<std::vector<double>> snapshots;

  double terminal_affected_ratio() const {
    return steps.empty() ? 0.0 : steps.back().affected_ratio;
  }

  /// First step whose affected ratio reaches `level`.
  std::optional<std::uint32_t> first_step_reaching(double level) const;
};

/// Shortest round-trip decimal form; stable across runs and platforms.
std::string format_real(double value);

/// `step,affected_ratio` or `step,affected_ratio,capacity_ratio`.
std::string trace_csv(const SimTrace& trace);

}  // namespace soc_cascade
