#include "ehp/parallel.hpp"

#include <cstdlib>
#include <string>

namespace ehp::parallel {

int thread_cap() {
#ifdef _OPENMP
  const int hw = omp_get_max_threads();
  const char* env = std::getenv("EHP_DUFFING_THREADS");
  if (env == nullptr || *env == '\0') return hw;
  char* end = nullptr;
  const long parsed = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || parsed < 0) return hw;
  if (parsed == 0) return 1;
  return static_cast<int>(parsed < hw ? parsed : hw);
#else
  return 1;
#endif
}

}  // namespace ehp::parallel
