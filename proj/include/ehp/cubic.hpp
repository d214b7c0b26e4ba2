#pragma once

#include <array>
#include <span>
#include <vector>

#include "ehp/core.hpp"

namespace ehp::cubic {

// A x^3 + B x^2 + C x + D = 0
struct Coefficients {
  double A;
  double B;
  double C;
  double D;
};

// Result of classifying and solving a genuine cubic.
struct Analysis {
  // monic form x^3 + A1 x^2 + B1 x + C1
  double A1;
  double B1;
  double C1;
  // depressed-cubic quantities: y^3 + s y + r with x = y - A1/3
  double r;
  double s;
  // disc = r^2/4 + s^3/27; positive means exactly one real root
  double disc;
  int n_real_roots;
  std::array<double, 3> roots;  // ascending, first n_real_roots entries valid

  std::span<const double> real_roots() const {
    return {roots.data(), static_cast<std::size_t>(n_real_roots)};
  }
};

// |A| at or below kDegeneracyRel * max(|B|,|C|,|D|,1) is treated as zero and
// routed to solve_degenerate. The other constants pin classification of the
// near-repeated-root band, the per-root residual bound and root dedup.
inline constexpr double kDegeneracyRel = 1e-14;
inline constexpr double kClassifyRel = 1e-12;
inline constexpr double kRootResidualRel = 1e-12;
inline constexpr double kDedupRel = 1e-9;

double evaluate(const Coefficients& q, double x);

// Closed-form (Cardano / trigonometric) solve with Newton polishing.
// Throws DegenerateCubic when |A| is below the degeneracy threshold and
// NonFiniteInput on non-finite coefficients.
Analysis analyze(const Coefficients& q);

// Solves the quadratic/linear equation left when A is numerically zero.
// Returns ascending real roots (possibly none for a negative-discriminant
// quadratic). Throws NoSolution / IndeterminateSolution when B and C are
// both degenerate.
std::vector<double> solve_degenerate(const Coefficients& q);

struct RootChoice {
  double value;
  bool ambiguous;  // more than one candidate was available
};

// Picks the root closest to u0; ties resolve to the smaller root value.
RootChoice select_root(std::span<const double> roots, double u0);

// Per-step cubic coefficients in raw parameters (a = 1/k). Only D depends on
// the momentum and the force sample.
Coefficients step_coefficients(double m, double c, double a, double beta,
                               double u0, double p0, double f_step, double dt);

struct Uniqueness {
  bool satisfied;  // s > 0: the step cubic has exactly one real root
  double s;
};

// Evaluates the one-real-root condition for the step cubic assembled at
// displacement u0 and step dt. Requires beta != 0.
Uniqueness uniqueness_condition(const DuffingSystem& system, double u0,
                                double dt);

}  // namespace ehp::cubic
