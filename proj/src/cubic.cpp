#include "ehp/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ehp::cubic {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool all_finite(const Coefficients& q) {
  return std::isfinite(q.A) && std::isfinite(q.B) && std::isfinite(q.C) &&
         std::isfinite(q.D);
}

double residual_magnitude_scale(const Coefficients& q, double x) {
  const double ax = std::fabs(x);
  return std::max({std::fabs(q.A) * ax * ax * ax, std::fabs(q.B) * ax * ax,
                   std::fabs(q.C) * ax, std::fabs(q.D), 1.0});
}

// Newton refinement of a closed-form estimate. Keeps the iterate with the
// smallest residual; near repeated roots Newton can overshoot, so the best
// seen value is what gets reported.
double polish(const Coefficients& q, double x0) {
  double x = x0;
  double best = x0;
  double best_res = std::fabs(evaluate(q, x0));
  for (int it = 0; it < 20; ++it) {
    const double p = evaluate(q, x);
    const double dp = (3.0 * q.A * x + 2.0 * q.B) * x + q.C;
    const double res = std::fabs(p);
    if (res < best_res) {
      best_res = res;
      best = x;
    }
    if (res == 0.0 || dp == 0.0) break;
    const double dx = p / dp;
    x -= dx;
    if (!std::isfinite(x)) break;
    if (std::fabs(dx) <= 0.5 * std::numeric_limits<double>::epsilon() *
                            (1.0 + std::fabs(x))) {
      const double r2 = std::fabs(evaluate(q, x));
      if (r2 < best_res) {
        best_res = r2;
        best = x;
      }
      break;
    }
  }
  return best;
}

double relative_residual(const Coefficients& q, double x) {
  return std::fabs(evaluate(q, x)) / residual_magnitude_scale(q, x);
}

// Given one accurate root x1, rebuilds the other two from the quotient
// quadratic A x^2 + e x + f. e comes from synthetic division; f uses the
// root-product identity, which needs no addition at all. Solved in the
// cancellation-free quadratic form, so the pair stays resolved even when
// the shifted variable of the closed-form construction cannot separate it.
void deflated_pair(const Coefficients& q, double x1, double* r1, double* r2) {
  const double e = std::fma(q.A, x1, q.B);
  const double f = (x1 != 0.0) ? -q.D / x1 : q.C;
  const double disc = std::max(e * e - 4.0 * q.A * f, 0.0);
  const double sq = std::sqrt(disc);
  const double w = -0.5 * (e + std::copysign(sq, e));
  double a = (w != 0.0) ? w / q.A : 0.0;
  double b = (w != 0.0) ? f / w : 0.0;
  if (a > b) std::swap(a, b);
  *r1 = a;
  *r2 = b;
}

// Roots of 3 x^2 + 2 A1 x + B1 (critical points of the monic cubic).
// Caller guarantees a positive discriminant.
void critical_points(double A1, double B1, double* lo, double* hi) {
  const double disc = A1 * A1 - 3.0 * B1;
  const double sq = std::sqrt(std::max(disc, 0.0));
  double q;
  if (A1 >= 0.0) {
    q = -(A1 + sq);
  } else {
    q = -(A1 - sq);
  }
  // x = q/3 and B1/q, from the factored quadratic formula
  double x1 = q / 3.0;
  double x2 = (q != 0.0) ? B1 / q : -A1 / 3.0;
  if (x1 > x2) std::swap(x1, x2);
  *lo = x1;
  *hi = x2;
}

}  // namespace

double evaluate(const Coefficients& q, double x) {
  return ((q.A * x + q.B) * x + q.C) * x + q.D;
}

Analysis analyze(const Coefficients& q) {
  if (!all_finite(q)) throw NonFiniteInput("cubic coefficients not finite");
  const double coeff_scale =
      std::max({std::fabs(q.B), std::fabs(q.C), std::fabs(q.D), 1.0});
  if (std::fabs(q.A) <= kDegeneracyRel * coeff_scale) {
    throw DegenerateCubic("leading coefficient is numerically zero");
  }

  Analysis out{};
  out.A1 = q.B / q.A;
  out.B1 = q.C / q.A;
  out.C1 = q.D / q.A;

  // Depressed form y^3 + s y + r, x = y - A1/3.
  const double A1 = out.A1;
  out.r = 2.0 * A1 * A1 * A1 / 27.0 - A1 * out.B1 / 3.0 + out.C1;
  out.s = out.B1 - A1 * A1 / 3.0;
  const double r = out.r;
  const double s = out.s;

  // r^2/4 + s^3/27 cancels catastrophically when |B/A| is large, so the
  // classifier is evaluated on the original coefficients instead (same value:
  // -(polynomial discriminant) / (108 A^4), positive for one real root,
  // negative for three). The band absorbs the rounding of the five products.
  const double t1 = 18.0 * q.A * q.B * q.C * q.D;
  const double t2 = -4.0 * q.B * q.B * q.B * q.D;
  const double t3 = q.B * q.B * q.C * q.C;
  const double t4 = -4.0 * q.A * q.C * q.C * q.C;
  const double t5 = -27.0 * q.A * q.A * q.D * q.D;
  const double denom = 108.0 * (q.A * q.A) * (q.A * q.A);
  out.disc = -(t1 + t2 + t3 + t4 + t5) / denom;
  const double term_scale = std::max({std::fabs(t1), std::fabs(t2),
                                      std::fabs(t3), std::fabs(t4),
                                      std::fabs(t5)});
  const double band = kClassifyRel * std::max(term_scale / denom, 1.0);

  const double shift = -A1 / 3.0;

  if (out.disc > band) {
    // One real root. Combine the cube roots without cancellation: take the
    // branch where -r/2 and the square root add in magnitude.
    const double sq = std::sqrt(out.disc);
    double y;
    const double w = (r >= 0.0) ? (-0.5 * r - sq) : (-0.5 * r + sq);
    const double cw = std::cbrt(w);
    y = (cw != 0.0) ? cw - s / (3.0 * cw) : 0.0;
    double best = polish(q, y + shift);
    // When the root is small next to the shift, the closed form loses it to
    // cancellation; the quasi-quadratic and quasi-linear limits then make
    // better seeds. Whichever polished candidate fits the cubic best wins.
    double best_res = relative_residual(q, best);
    const auto consider = [&](double seed) {
      if (!std::isfinite(seed)) return;
      const double cand = polish(q, seed);
      const double res = relative_residual(q, cand);
      if (std::isfinite(cand) && res < best_res) {
        best = cand;
        best_res = res;
      }
    };
    if (q.C != 0.0) consider(-q.D / q.C);
    const double qdisc = q.C * q.C - 4.0 * q.B * q.D;
    if (q.B != 0.0 && qdisc >= 0.0) {
      const double qw = -0.5 * (q.C + std::copysign(std::sqrt(qdisc), q.C));
      if (qw != 0.0) {
        consider(qw / q.B);
        consider(q.D / qw);
      }
    }
    out.roots[0] = best;
    out.n_real_roots = 1;
  } else if (out.disc < -band && s < 0.0) {
    // Three distinct real roots; a negative discriminant forces s < 0 (the
    // s test only guards against inconsistent rounding of the two routes).
    const double mm = -s / 3.0;
    const double norm = 2.0 * std::sqrt(mm);
    double arg = -0.5 * r / (mm * std::sqrt(mm));
    arg = std::clamp(arg, -1.0, 1.0);
    const double theta = std::acos(arg);
    double ys[3];
    for (int k = 0; k < 3; ++k) {
      ys[k] = norm * std::cos((theta + 2.0 * kPi * k) / 3.0);
    }
    for (int k = 0; k < 3; ++k) out.roots[k] = polish(q, ys[k] + shift);
    // The shifted variable can swallow the separation of the two closest
    // roots entirely (their difference sits far below one ulp of the shift).
    // Deflating the best-conditioned root out and re-solving the quotient
    // quadratic recovers the pair in the original variable.
    int steepest = 0;
    double steepest_slope = -1.0;
    for (int k = 0; k < 3; ++k) {
      const double x = out.roots[k];
      const double slope = std::fabs((3.0 * q.A * x + 2.0 * q.B) * x + q.C);
      if (slope > steepest_slope) {
        steepest_slope = slope;
        steepest = k;
      }
    }
    const double x1 = out.roots[steepest];
    double pa, pb;
    deflated_pair(q, x1, &pa, &pb);
    out.roots[0] = x1;
    out.roots[1] = polish(q, pa);
    out.roots[2] = polish(q, pb);
    std::sort(out.roots.begin(), out.roots.end());
    out.n_real_roots = 3;
  } else {
    // Repeated-root band. The cubic has a critical value near zero; decide
    // between a genuine double root and a near-miss complex pair by the
    // residual at the polished critical point.
    const double crit_disc = A1 * A1 - 3.0 * out.B1;
    if (crit_disc <= 0.0) {
      // No spread between critical points: triple-root regime at -A1/3.
      out.roots[0] = polish(q, shift);
      out.n_real_roots = 1;
    } else {
      double lo, hi;
      critical_points(A1, out.B1, &lo, &hi);
      const double flo = std::fabs(evaluate(q, lo));
      const double fhi = std::fabs(evaluate(q, hi));
      const double dbl_est = (flo <= fhi) ? lo : hi;
      // The remaining simple root from the coefficient sum.
      const double single_est = -A1 - 2.0 * dbl_est;
      const double single = polish(q, single_est);
      const double dbl = polish(q, dbl_est);
      const double dedup = kDedupRel * (1.0 + std::max(std::fabs(single),
                                                       std::fabs(dbl)));
      const bool dbl_is_root =
          std::fabs(evaluate(q, dbl)) <=
          kRootResidualRel * residual_magnitude_scale(q, dbl);
      if (!dbl_is_root || std::fabs(single - dbl) <= dedup) {
        out.roots[0] = single;
        out.n_real_roots = 1;
      } else {
        out.roots[0] = std::min(single, dbl);
        out.roots[1] = std::max(single, dbl);
        out.n_real_roots = 2;
      }
    }
  }
  return out;
}

std::vector<double> solve_degenerate(const Coefficients& q) {
  if (!all_finite(q)) throw NonFiniteInput("cubic coefficients not finite");
  const double scale =
      std::max({std::fabs(q.B), std::fabs(q.C), std::fabs(q.D), 1.0});
  const double tol = kDegeneracyRel * scale;

  if (std::fabs(q.B) > tol) {
    // B x^2 + C x + D, solved in the cancellation-free form.
    const double disc = q.C * q.C - 4.0 * q.B * q.D;
    if (disc < 0.0) return {};
    const double sq = std::sqrt(disc);
    const double w = -0.5 * (q.C + std::copysign(sq, q.C));
    double x1, x2;
    if (w != 0.0) {
      x1 = w / q.B;
      x2 = q.D / w;
    } else {
      // C and D both vanish: double root at zero.
      x1 = x2 = 0.0;
    }
    if (x1 > x2) std::swap(x1, x2);
    if (std::fabs(x2 - x1) <= kDedupRel * (1.0 + std::fabs(x2))) {
      return {x1};
    }
    return {x1, x2};
  }
  if (std::fabs(q.C) > tol) {
    return {-q.D / q.C};
  }
  if (std::fabs(q.D) > tol) {
    throw NoSolution("constant equation with nonzero constant");
  }
  throw IndeterminateSolution("all coefficients numerically zero");
}

RootChoice select_root(std::span<const double> roots, double u0) {
  if (roots.empty()) throw EmptyRootSet("no candidate roots");
  double best = roots[0];
  double best_d = std::fabs(roots[0] - u0);
  for (std::size_t i = 1; i < roots.size(); ++i) {
    const double d = std::fabs(roots[i] - u0);
    if (d < best_d || (d == best_d && roots[i] < best)) {
      best = roots[i];
      best_d = d;
    }
  }
  return {best, roots.size() > 1};
}

Coefficients step_coefficients(double m, double c, double a, double beta,
                               double u0, double p0, double f_step, double dt) {
  const double dt2 = dt * dt;
  Coefficients q;
  q.A = beta * a * dt2;
  q.B = 2.0 * beta * a * dt2 * u0;
  q.C = 5.0 * dt2 + 20.0 * m * a + 10.0 * c * a * dt +
        3.0 * beta * a * u0 * u0 * dt2;
  q.D = 5.0 * u0 * dt2 - 10.0 * c * a * u0 * dt - 20.0 * a * p0 * dt -
        20.0 * m * a * u0 + 4.0 * beta * a * u0 * u0 * u0 * dt2 -
        10.0 * a * f_step * dt2;
  return q;
}

Uniqueness uniqueness_condition(const DuffingSystem& system, double u0,
                                double dt) {
  if (system.beta() == 0.0) {
    throw DegenerateCubic("uniqueness condition requires a cubic term");
  }
  if (!(dt > 0.0) || !std::isfinite(dt) || !std::isfinite(u0)) {
    throw InvalidArgument("u0 and dt must be finite with dt > 0");
  }
  const Coefficients q = step_coefficients(system.m(), system.c(), system.a(),
                                           system.beta(), u0, 0.0, 0.0, dt);
  const double A1 = q.B / q.A;
  const double B1 = q.C / q.A;
  const double s = B1 - A1 * A1 / 3.0;
  return {s > 0.0, s};
}

}  // namespace ehp::cubic
