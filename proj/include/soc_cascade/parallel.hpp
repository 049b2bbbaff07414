#pragma once

#include <cstddef>

namespace soc_cascade {

/// Name of the environment variable that caps the worker count.
inline constexpr const char* kThreadsEnvVar = "SOC_CASCADE_THREADS";

/// Applies SOC_CASCADE_THREADS (when set to a positive integer) to the
/// OpenMP runtime. Returns the resulting worker cap.
int configure_threads_from_env();

void set_worker_count(int workers);
int worker_count();

/// Fixed block partition of [0, n) used for reductions whose summation order
/// must not depend on the worker count.
struct BlockPartition {
  std::size_t count;
  std::size_t block_size;

  static BlockPartition of(std::size_t n, std::size_t max_blocks = 64);

  std::size_t begin(std::size_t block) const { return block * block_size; }
  std::size_t end(std::size_t block, std::size_t n) const {
    const std::size_t e = (block + 1) * block_size;
    return e < n ? e : n;
  }
};

}  // namespace soc_cascade
