#include "soc_cascade/trace.hpp"

#include <charconv>
#include <cmath>

namespace soc_cascade {

std::string_view to_string(TerminalReason r) {
  switch (r) {
    case TerminalReason::kConverged: return "converged";
    case TerminalReason::kMaxSteps: return "max_steps";
    case TerminalReason::kSaturated: return "saturated";
  }
  return "?";
}

std::optional<std::uint32_t> SimTrace::first_step_reaching(double level) const {
  for (const auto& s : steps) {
    if (s.affected_ratio >= level) return s.step;
  }
  return std::nullopt;
}

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (value == 0.0) return "0";  // folds -0
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

std::string trace_csv(const SimTrace& trace) {
  const bool capacity = !trace.steps.empty() && trace.steps.front().capacity_ratio.has_value();
  std::string out = capacity ? "step,affected_ratio,capacity_ratio\n" : "step,affected_ratio\n";
  for (const auto& s : trace.steps) {
    out += std::to_string(s.step);
    out += ',';
    out += format_real(s.affected_ratio);
    if (capacity) {
      out += ',';
      out += format_real(s.capacity_ratio.value_or(0.0));
    }
    out += '\n';
  }
  return out;
}

}  // namespace soc_cascade
