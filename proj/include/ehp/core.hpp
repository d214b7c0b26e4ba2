#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <variant>

#include "ehp/errors.hpp"

namespace ehp {

// Forced-damped Duffing oscillator
//
//   m u'' + c u' + k u + beta u^3 = f(t)
//
// with mass m > 0, viscous damping c >= 0, linear stiffness k != 0 (negative
// for the inverted well) and cubic stiffness beta (negative for a softening
// spring). The flexibility a = 1/k is precomputed because the stepper works
// with the mixed displacement/impulse form, where a multiplies everything.
class DuffingSystem {
 public:
  DuffingSystem(double mass, double damping, double stiffness,
                double cubic_stiffness)
      : m_(mass), c_(damping), k_(stiffness), beta_(cubic_stiffness),
        a_(1.0 / stiffness) {
    if (!(std::isfinite(mass) && std::isfinite(damping) &&
          std::isfinite(stiffness) && std::isfinite(cubic_stiffness))) {
      throw InvalidArgument("system parameters must be finite");
    }
    if (!(mass > 0.0)) throw InvalidArgument("mass must be positive");
    if (damping < 0.0) throw InvalidArgument("damping must be non-negative");
    if (stiffness == 0.0) throw InvalidArgument("stiffness must be nonzero");
  }

  double m() const { return m_; }
  double c() const { return c_; }
  double k() const { return k_; }
  double beta() const { return beta_; }
  double a() const { return a_; }

 private:
  double m_, c_, k_, beta_, a_;
};

// Time-dependent external force. Immutable; evaluation must be pure so
// integrations stay deterministic and thread-safe.
class Forcing {
 public:
  static Forcing zero() { return Forcing(Zero{}); }

  static Forcing constant(double force) { return Forcing(Constant{force}); }

  // amplitude * cos(omega * t + phase)
  static Forcing harmonic(double amplitude, double omega, double phase = 0.0) {
    return Forcing(Harmonic{amplitude, omega, phase});
  }

  static Forcing custom(std::function<double(double)> f) {
    if (!f) throw InvalidArgument("custom forcing must be callable");
    return Forcing(std::move(f));
  }

  double operator()(double t) const {
    return std::visit(
        [t](const auto& f) -> double {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, Zero>) {
            return 0.0;
          } else if constexpr (std::is_same_v<T, Constant>) {
            return f.value;
          } else if constexpr (std::is_same_v<T, Harmonic>) {
            return f.amplitude * std::cos(f.omega * t + f.phase);
          } else {
            return f(t);
          }
        },
        kind_);
  }

  std::string describe() const;

 private:
  struct Zero {};
  struct Constant {
    double value;
  };
  struct Harmonic {
    double amplitude;
    double omega;
    double phase;
  };
  using Kind = std::variant<Zero, Constant, Harmonic,
                            std::function<double(double)>>;

  explicit Forcing(Kind kind) : kind_(std::move(kind)) {}

  Kind kind_;
};

// Mixed-variable state at one time node: displacement u, spring-force
// impulse J (time integral of k*u) and momentum p.
struct State {
  double t;
  double u;
  double J;
  double p;

  bool finite() const {
    return std::isfinite(t) && std::isfinite(u) && std::isfinite(J) &&
           std::isfinite(p);
  }
};

// The impulse origin is arbitrary, so runs start from J = 0; only impulse
// increments enter the update equations.
inline State initial_state(const DuffingSystem& system, double u0, double v0) {
  if (!(std::isfinite(u0) && std::isfinite(v0))) {
    throw InvalidArgument("initial conditions must be finite");
  }
  return State{0.0, u0, 0.0, system.m() * v0};
}

}  // namespace ehp
