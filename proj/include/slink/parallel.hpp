#pragma once

#include <cstddef>

namespace slink {

/// Kernel execution choice. Every parallel kernel writes per-item results
/// into preassigned slots and reduces in index order, so Serial and Parallel
/// produce bit-identical output; Serial stays the reference the tests and
/// the benchmark compare against.
enum class ExecMode { Serial, Parallel };

/// Worker count the Parallel mode would use (1 when OpenMP is unavailable).
int max_parallel_threads();

/// Apply fn(i) for i in [0, n). Parallel mode fans out across OpenMP threads;
/// fn must only touch its own slot and must not throw.
template <typename F>
void for_each_index(std::size_t n, ExecMode mode, F&& fn) {
  if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(n); ++i) fn(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < n; ++i) fn(i);
  }
}

}  // namespace slink
