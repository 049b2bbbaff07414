#include "soc_cascade/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace soc_cascade {

int configure_threads_from_env() {
  if (const char* raw = std::getenv(kThreadsEnvVar); raw != nullptr) {
    try {
      const int requested = std::stoi(raw);
      if (requested > 0) set_worker_count(requested);
    } catch (const std::exception&) {
      // Ignored: a malformed cap leaves the OpenMP default in place.
    }
  }
  return worker_count();
}

void set_worker_count(int workers) {
  if (workers > 0) omp_set_num_threads(workers);
}

int worker_count() { return omp_get_max_threads(); }

BlockPartition BlockPartition::of(std::size_t n, std::size_t max_blocks) {
  if (n == 0) return {0, 1};
  const std::size_t block_size = (n + max_blocks - 1) / max_blocks;
  return {(n + block_size - 1) / block_size, block_size};
}

}  // namespace soc_cascade
