#pragma once

namespace soc_cascade::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Parses argv, runs the chosen subcommand and returns the process exit
/// code. Never throws.
int dispatch(int argc, const char* const* argv);

}  // namespace soc_cascade::cli
