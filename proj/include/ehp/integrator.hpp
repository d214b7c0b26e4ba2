#pragma once

#include <optional>
#include <vector>

#include "ehp/core.hpp"
#include "ehp/cubic.hpp"

namespace ehp {

// Left-hand sides of the three discrete step equations evaluated at a
// completed step: the two weighted equations of motion (r28, r29) and the
// impulse-displacement relation (r30).
struct Residuals {
  double r28;
  double r29;
  double r30;
};

struct StepDiagnostics {
  cubic::Coefficients coeffs;
  // Present when the full cubic path ran; empty when the step degenerated to
  // a quadratic/linear solve (beta ~ 0).
  std::optional<cubic::Analysis> analysis;
  double selected_root;      // equals the u of the produced state
  bool was_ambiguous;        // more than one real root was available
  bool uniqueness_satisfied; // s > 0 for the assembled cubic (true when degenerate)
  Residuals residuals;
  double f_step;              // force sample used by this step
};

// Result of one integration: uniform-grid states plus one diagnostics record
// per step. states.size() == diagnostics.size() + 1.
struct Trajectory {
  std::vector<State> states;
  double dt = 0.0;
  std::vector<StepDiagnostics> diagnostics;
};

// Acceptance bounds for step residuals. r28/r29 scale with the step forces;
// r30 is tied to machine precision because the impulse update enforces the
// relation by construction.
inline constexpr double kResidualRel = 1e-9;
inline constexpr double kImpulseResidualRel = 1e-12;

double residual_scale(double m, double dt, const State& s0, const State& s1,
                      double f_step);

// Weighted impulse of the cubic spring force over one step,
// (beta dt / 20) (4 u0^3 + 3 u0^2 u1 + 2 u0 u1^2 + u1^3).
double q_term(double beta, double dt, double u0, double u1);

// Cubic in the end-of-step displacement obtained by eliminating the impulse
// increment from the step equations. f_step is the constant force sample
// used over the step (taken at the step midpoint by step()).
cubic::Coefficients assemble_cubic(const DuffingSystem& system,
                                   const State& state0, double dt,
                                   double f_step);

Residuals residuals(const DuffingSystem& system, const State& state0,
                    const State& state1, double dt, double f_step);

struct StepResult {
  State state;
  StepDiagnostics diagnostics;
};

// Advances one step of size dt: solves the step cubic for u1, applies the
// explicit impulse and momentum updates, and verifies the residual bounds.
StepResult step(const DuffingSystem& system, const State& state0, double dt,
                const Forcing& forcing);

// Marches from init to init.t + t_total on a uniform grid of spacing dt; a
// final shorter step is taken when t_total is not a multiple of dt. Step
// failures are rethrown as IntegrationError with the step index.
Trajectory integrate(const DuffingSystem& system, const State& init,
                     double dt, double t_total, const Forcing& forcing);

}  // namespace ehp
