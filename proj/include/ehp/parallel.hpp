#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ehp::parallel {

// Worker cap for batch runs. Reads EHP_DUFFING_THREADS on every call:
// 0 means sequential, an unset or unparsable value means the hardware
// default. Always 1 when built without OpenMP.
int thread_cap();

// Runs f(i) for i in [0, n). Iterations must be independent; each writes its
// own output slot, so results do not depend on the schedule.
template <class F>
void for_each_index(std::size_t n, F&& f) {
  const int threads = thread_cap();
#ifdef _OPENMP
  if (threads > 1 && n > 1) {
    #pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      f(static_cast<std::size_t>(i));
    }
    return;
  }
#endif
  (void)threads;
  for (std::size_t i = 0; i < n; ++i) f(i);
}

}  // namespace ehp::parallel
