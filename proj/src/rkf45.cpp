#include "ehp/rkf45.hpp"

#include <algorithm>
#include <cmath>

namespace ehp::rkf45 {

void Config::validate() const {
  if (!(abserr > 0.0) || !(relerr >= 0.0)) {
    throw InvalidArgument("tolerances must be positive");
  }
  if (!(h_min > 0.0) || !(h_init >= h_min) || !(h_max >= h_init)) {
    throw InvalidArgument("require 0 < h_min <= h_init <= h_max");
  }
  if (!(safety_factor > 0.0) || safety_factor >= 1.0) {
    throw InvalidArgument("safety factor must lie in (0, 1)");
  }
  if (max_steps <= 0) throw InvalidArgument("max_steps must be positive");
}

std::array<double, 2> rhs(const DuffingSystem& system, const Forcing& forcing,
                          double t, const std::array<double, 2>& y) {
  const double u = y[0];
  const double v = y[1];
  const double f = forcing(t);
  return {v, (f - system.c() * v - system.k() * u -
              system.beta() * u * u * u) /
                 system.m()};
}

namespace {

using Y = std::array<double, 2>;

struct StepOut {
  Y y4;
  Y y5;
};

// Classic Fehlberg 4(5) tableau.
StepOut fehlberg_step(const DuffingSystem& sys, const Forcing& f, double t,
                      const Y& y, double h) {
  const Y k1 = rhs(sys, f, t, y);
  Y w{y[0] + h * (1.0 / 4.0) * k1[0], y[1] + h * (1.0 / 4.0) * k1[1]};
  const Y k2 = rhs(sys, f, t + h / 4.0, w);

  for (int i = 0; i < 2; ++i)
    w[i] = y[i] + h * ((3.0 / 32.0) * k1[i] + (9.0 / 32.0) * k2[i]);
  const Y k3 = rhs(sys, f, t + 3.0 * h / 8.0, w);

  for (int i = 0; i < 2; ++i)
    w[i] = y[i] + h * ((1932.0 / 2197.0) * k1[i] - (7200.0 / 2197.0) * k2[i] +
                       (7296.0 / 2197.0) * k3[i]);
  const Y k4 = rhs(sys, f, t + 12.0 * h / 13.0, w);

  for (int i = 0; i < 2; ++i)
    w[i] = y[i] + h * ((439.0 / 216.0) * k1[i] - 8.0 * k2[i] +
                       (3680.0 / 513.0) * k3[i] - (845.0 / 4104.0) * k4[i]);
  const Y k5 = rhs(sys, f, t + h, w);

  for (int i = 0; i < 2; ++i)
    w[i] = y[i] + h * (-(8.0 / 27.0) * k1[i] + 2.0 * k2[i] -
                       (3544.0 / 2565.0) * k3[i] + (1859.0 / 4104.0) * k4[i] -
                       (11.0 / 40.0) * k5[i]);
  const Y k6 = rhs(sys, f, t + h / 2.0, w);

  StepOut out;
  for (int i = 0; i < 2; ++i) {
    out.y4[i] = y[i] + h * ((25.0 / 216.0) * k1[i] + (1408.0 / 2565.0) * k3[i] +
                            (2197.0 / 4104.0) * k4[i] - (1.0 / 5.0) * k5[i]);
    out.y5[i] =
        y[i] + h * ((16.0 / 135.0) * k1[i] + (6656.0 / 12825.0) * k3[i] +
                    (28561.0 / 56430.0) * k4[i] - (9.0 / 50.0) * k5[i] +
                    (2.0 / 55.0) * k6[i]);
  }
  return out;
}

}  // namespace

std::vector<Sample> integrate_adaptive(const DuffingSystem& system, double u0,
                                       double v0, double t_total,
                                       const Forcing& forcing,
                                       const Config& config,
                                       std::span<const double> sample_times) {
  config.validate();
  if (!(t_total > 0.0) || !std::isfinite(t_total)) {
    throw InvalidArgument("horizon must be finite and positive");
  }
  if (!(std::isfinite(u0) && std::isfinite(v0))) {
    throw NonFiniteInput("initial conditions not finite");
  }
  for (std::size_t i = 0; i < sample_times.size(); ++i) {
    if (!(sample_times[i] >= 0.0) || sample_times[i] > t_total) {
      throw InvalidArgument("sample times must lie in [0, t_total]");
    }
    if (i > 0 && sample_times[i] < sample_times[i - 1]) {
      throw InvalidArgument("sample times must be ascending");
    }
  }

  std::vector<Sample> out;
  out.reserve(sample_times.size());

  double t = 0.0;
  Y y{u0, v0};
  double h = config.h_init;
  long steps = 0;

  for (const double target : sample_times) {
    while (t < target) {
      const bool clamped = t + h >= target;
      const double h_try = clamped ? target - t : h;
      if (h_try < config.h_min && !clamped) {
        throw StepSizeUnderflow("step size fell below h_min");
      }
      const StepOut trial = fehlberg_step(system, forcing, t, y, h_try);
      if (++steps > config.max_steps) {
        throw MaxStepsExceeded("adaptive step budget exhausted");
      }

      double err = 0.0;
      for (int i = 0; i < 2; ++i) {
        const double e = std::fabs(trial.y5[i] - trial.y4[i]) /
                         (config.abserr + config.relerr * std::fabs(y[i]));
        err = std::max(err, e);
      }

      if (std::isfinite(err) && err <= 1.0) {
        y = trial.y4;
        t = clamped ? target : t + h_try;
        if (!std::isfinite(y[0]) || !std::isfinite(y[1])) {
          throw NonFiniteState("reference solution became non-finite");
        }
      }

      // err^(-1/5) growth, clipped to [0.1, 5]; a non-finite error estimate
      // (overflowing trial state) forces the strongest shrink.
      double factor = 5.0;
      if (std::isfinite(err) && err > 0.0) {
        factor = std::clamp(config.safety_factor * std::pow(err, -0.2), 0.1,
                            5.0);
      } else if (!std::isfinite(err)) {
        factor = 0.1;
      }
      const double h_next =
          std::clamp(h_try * factor, config.h_min, config.h_max);
      if (!(std::isfinite(err) && err <= 1.0) && h_try <= config.h_min) {
        throw StepSizeUnderflow("step size fell below h_min");
      }
      h = h_next;
    }
    out.push_back({target, y[0], y[1]});
  }
  return out;
}

}  // namespace ehp::rkf45
