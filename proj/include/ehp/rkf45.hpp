#pragma once

#include <array>
#include <span>
#include <vector>

#include "ehp/core.hpp"

namespace ehp::rkf45 {

// Adaptive controller settings. A step is accepted when
//   max_i |y5_i - y4_i| / (abserr + relerr * |y_i|) <= 1
// and the next step size is h * clamp(0.9 * err^(-1/5), 0.1, 5), kept within
// [h_min, h_max].
struct Config {
  double abserr = 1e-7;
  double relerr = 1e-6;
  double h_init = 1e-3;
  double h_min = 1e-12;
  double h_max = 1.0;
  double safety_factor = 0.9;
  long max_steps = 100000000L;

  void validate() const;
};

struct Sample {
  double t;
  double u;
  double v;
};

// First-order right-hand side for y = (u, v):
//   u' = v,  v' = (f(t) - c v - k u - beta u^3) / m
std::array<double, 2> rhs(const DuffingSystem& system, const Forcing& forcing,
                          double t, const std::array<double, 2>& y);

// Integrates from t = 0 to the last sample time with the classic Fehlberg
// 4(5) embedded pair, clamping the step so every requested sample time is hit
// exactly; returned sample times are bitwise equal to the request.
// sample_times must be ascending and within [0, t_total].
std::vector<Sample> integrate_adaptive(const DuffingSystem& system, double u0,
                                       double v0, double t_total,
                                       const Forcing& forcing,
                                       const Config& config,
                                       std::span<const double> sample_times);

}  // namespace ehp::rkf45
