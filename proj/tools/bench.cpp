// Times the catalog sweep with the batch fan-out sequential (thread cap 1)
// and with the configured cap, and checks the two produce bitwise-identical
// displacements. The per-run stepper is a serial recurrence; parallelism
// only fans out across independent runs.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "ehp/experiments.hpp"
#include "ehp/parallel.hpp"

namespace {

using ehp::experiments::catalog;

std::vector<std::vector<double>> sweep() {
  const auto& specs = catalog();
  std::vector<std::vector<double>> u(specs.size());
  ehp::parallel::for_each_index(specs.size(), [&](std::size_t i) {
    const auto& spec = specs[i];
    const ehp::State init = ehp::initial_state(spec.system, spec.u0, spec.v0);
    const ehp::Trajectory tr = ehp::integrate(
        spec.system, init, spec.dt_default, spec.t_total_default,
        spec.forcing);
    u[i].reserve(tr.states.size());
    for (const ehp::State& s : tr.states) u[i].push_back(s.u);
  });
  return u;
}

double timed(std::vector<std::vector<double>>* out) {
  const auto t0 = std::chrono::steady_clock::now();
  *out = sweep();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main() {
  setenv("EHP_DUFFING_THREADS", "0", 1);
  std::vector<std::vector<double>> serial;
  const double t_serial = timed(&serial);

  unsetenv("EHP_DUFFING_THREADS");
  const int cap = ehp::parallel::thread_cap();
  std::vector<std::vector<double>> parallel;
  const double t_parallel = timed(&parallel);

  bool identical = serial.size() == parallel.size();
  for (std::size_t i = 0; identical && i < serial.size(); ++i) {
    identical = serial[i] == parallel[i];
  }

  std::printf("catalog sweep, %zu runs\n", serial.size());
  std::printf("  sequential:      %8.3f s\n", t_serial);
  std::printf("  %2d-way fan-out:  %8.3f s  (speedup %.2fx)\n", cap,
              t_parallel, t_serial / t_parallel);
  std::printf("  results bitwise identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
