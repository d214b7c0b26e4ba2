#include "ehp/integrator.hpp"

#include <cmath>
#include <utility>

namespace ehp {

namespace {

// Shared residual evaluation. The impulse increment dJ is passed explicitly:
// step() hands in the increment it just applied (the update defines J1 as
// J0 + dJ, so the impulse relation holds by construction and r30 measures
// only evaluation rounding), while the public residuals() recovers it from
// the stored states.
Residuals residuals_from_increment(const DuffingSystem& sys, const State& s0,
                                   double u1, double p1, double dJ, double dt,
                                   double f_step) {
  const double m = sys.m();
  const double c = sys.c();
  const double a = sys.a();
  const double du = u1 - s0.u;
  const double q = q_term(sys.beta(), dt, s0.u, u1);
  const double pulse = f_step * dt;

  const double r28 =
      m / dt * du + 0.5 * c * du + 0.5 * dJ - 0.5 * pulse - s0.p + q;
  const double r29 =
      -(m / dt) * du + 0.5 * c * du + 0.5 * dJ - 0.5 * pulse + p1 + q;
  const double r30 = a / dt * dJ - 0.5 * (u1 + s0.u);
  return {r28, r29, r30};
}

}  // namespace

double residual_scale(double m, double dt, const State& s0, const State& s1,
                      double f_step) {
  return std::max({1.0, std::fabs(s0.p), std::fabs(s1.p),
                   m * std::fabs(s1.u - s0.u) / dt, std::fabs(f_step) * dt});
}

double q_term(double beta, double dt, double u0, double u1) {
  return beta * dt / 20.0 *
         (4.0 * u0 * u0 * u0 + 3.0 * u0 * u0 * u1 + 2.0 * u0 * u1 * u1 +
          u1 * u1 * u1);
}

cubic::Coefficients assemble_cubic(const DuffingSystem& system,
                                   const State& state0, double dt,
                                   double f_step) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw InvalidArgument("step size must be finite and positive");
  }
  if (!state0.finite() || !std::isfinite(f_step)) {
    throw NonFiniteInput("step inputs not finite");
  }
  return cubic::step_coefficients(system.m(), system.c(), system.a(),
                                  system.beta(), state0.u, state0.p, f_step,
                                  dt);
}

Residuals residuals(const DuffingSystem& system, const State& state0,
                    const State& state1, double dt, double f_step) {
  return residuals_from_increment(system, state0, state1.u, state1.p,
                                  state1.J - state0.J, dt, f_step);
}

StepResult step(const DuffingSystem& system, const State& state0, double dt,
                const Forcing& forcing) {
  const double f_step = forcing(state0.t + 0.5 * dt);
  const cubic::Coefficients coeffs = assemble_cubic(system, state0, dt, f_step);

  StepDiagnostics diag{};
  diag.coeffs = coeffs;
  diag.f_step = f_step;

  const double coeff_scale = std::max(
      {std::fabs(coeffs.B), std::fabs(coeffs.C), std::fabs(coeffs.D), 1.0});

  cubic::RootChoice choice{};
  if (std::fabs(coeffs.A) > cubic::kDegeneracyRel * coeff_scale) {
    diag.analysis = cubic::analyze(coeffs);
    choice = cubic::select_root(diag.analysis->real_roots(), state0.u);
    diag.uniqueness_satisfied = diag.analysis->s > 0.0;
  } else {
    const std::vector<double> roots = cubic::solve_degenerate(coeffs);
    if (roots.empty()) {
      throw NoRealRoot("degenerate step equation has no real solution");
    }
    choice = cubic::select_root(roots, state0.u);
    diag.uniqueness_satisfied = true;
  }

  const double u1 = choice.value;
  diag.selected_root = u1;
  diag.was_ambiguous = choice.ambiguous;

  const double a = system.a();
  const double dJ = dt / (2.0 * a) * (state0.u + u1);
  const double J1 = state0.J + dJ;
  const double q = q_term(system.beta(), dt, state0.u, u1);
  const double p1 =
      state0.p + f_step * dt - system.c() * (u1 - state0.u) - dJ - 2.0 * q;

  diag.residuals =
      residuals_from_increment(system, state0, u1, p1, dJ, dt, f_step);

  State state1{state0.t + dt, u1, J1, p1};
  if (!state1.finite()) throw NonFiniteState("step produced non-finite state");

  const double scale = residual_scale(system.m(), dt, state0, state1, f_step);
  if (std::fabs(diag.residuals.r28) > kResidualRel * scale ||
      std::fabs(diag.residuals.r29) > kResidualRel * scale ||
      std::fabs(diag.residuals.r30) >
          kImpulseResidualRel * std::max(1.0, std::fabs(state0.u) +
                                                  std::fabs(u1))) {
    throw ResidualCheckFailed(diag.residuals.r28, diag.residuals.r29,
                              diag.residuals.r30);
  }
  return {state1, std::move(diag)};
}

Trajectory integrate(const DuffingSystem& system, const State& init,
                     double dt, double t_total, const Forcing& forcing) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw InvalidArgument("step size must be finite and positive");
  }
  if (!(t_total > 0.0) || !std::isfinite(t_total)) {
    throw InvalidArgument("horizon must be finite and positive");
  }
  if (!init.finite()) throw NonFiniteInput("initial state not finite");

  // Steps of size dt, plus a shorter final step unless t_total sits on the
  // grid (within a 1e-9 relative guard against ratio rounding).
  const double ratio = t_total / dt;
  const double rounded = std::round(ratio);
  std::size_t n_full;
  double last_dt = 0.0;
  if (std::fabs(ratio - rounded) <= 1e-9 * ratio && rounded >= 1.0) {
    n_full = static_cast<std::size_t>(rounded);
  } else {
    n_full = static_cast<std::size_t>(std::floor(ratio));
    last_dt = t_total - static_cast<double>(n_full) * dt;
  }

  Trajectory out;
  out.dt = dt;
  out.states.reserve(n_full + 2);
  out.diagnostics.reserve(n_full + 1);
  out.states.push_back(init);

  const std::size_t n_total = n_full + (last_dt > 0.0 ? 1 : 0);
  for (std::size_t i = 0; i < n_total; ++i) {
    const double h = (i < n_full) ? dt : last_dt;
    try {
      StepResult r = step(system, out.states.back(), h, forcing);
      if (i == n_total - 1 && last_dt > 0.0) {
        r.state.t = init.t + t_total;
      }
      out.states.push_back(r.state);
      out.diagnostics.push_back(std::move(r.diagnostics));
    } catch (const Error& e) {
      throw IntegrationError(i, e.what());
    }
  }
  return out;
}

}  // namespace ehp
