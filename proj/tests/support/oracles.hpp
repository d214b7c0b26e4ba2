// Independent oracles for the test suite. Nothing here reuses the library's
// solution paths: roots come from bracketed bisection, linear steps from a
// direct 2x2 solve, and the forced linear oscillator from its closed form.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace oracles {

struct Cubic {
  double A, B, C, D;
  double operator()(double x) const {
    return ((A * x + B) * x + C) * x + D;
  }
};

// Bisection to absolute tolerance tol on a bracket with a sign change.
inline double bisect(const Cubic& q, double lo, double hi, double tol) {
  double flo = q(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= tol || mid == lo || mid == hi) return mid;
    const double fm = q(mid);
    if (fm == 0.0) return mid;
    if ((flo < 0.0) != (fm < 0.0)) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

// All real roots of A x^3 + B x^2 + C x + D by sign-change bisection over
// [-R, R] with R = 1 + Cauchy bound, the interval split at the critical
// points so each piece is monotone and no crossing can hide.
inline std::vector<double> enumerate_roots(const Cubic& q, double tol_rel) {
  const double cauchy =
      1.0 + std::max({std::fabs(q.B), std::fabs(q.C), std::fabs(q.D)}) /
                std::fabs(q.A);
  const double R = 1.0 + cauchy;
  const double tol = tol_rel * R;

  std::vector<double> edges{-R};
  // critical points: roots of 3A x^2 + 2B x + C (stable quadratic form)
  const double qa = 3.0 * q.A, qb = 2.0 * q.B, qc = q.C;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc > 0.0) {
    const double sq = std::sqrt(disc);
    const double w = -0.5 * (qb + std::copysign(sq, qb));
    double x1 = (w != 0.0) ? w / qa : 0.0;
    double x2 = (w != 0.0) ? qc / w : 0.0;
    if (x1 > x2) std::swap(x1, x2);
    if (x1 > -R && x1 < R) edges.push_back(x1);
    if (x2 > -R && x2 < R) edges.push_back(x2);
  }
  edges.push_back(R);

  std::vector<double> roots;
  for (const double e : edges) {
    if (q(e) == 0.0) roots.push_back(e);
  }
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double lo = edges[i];
    const double hi = edges[i + 1];
    const double flo = q(lo);
    const double fhi = q(hi);
    if (flo != 0.0 && fhi != 0.0 && (flo < 0.0) != (fhi < 0.0)) {
      roots.push_back(bisect(q, lo, hi, tol));
    }
  }
  std::sort(roots.begin(), roots.end());
  // merge bisection hits that landed on the same root via adjacent segments
  std::vector<double> merged;
  for (const double r : roots) {
    if (merged.empty() || std::fabs(r - merged.back()) > 4.0 * tol) {
      merged.push_back(r);
    }
  }
  return merged;
}

// Closed-form single step of the beta = 0 stepper: the two step equations
// are linear in (u1, J1), solved here by Cramer's rule; p1 follows from the
// second weighted equation.
struct LinearStepOracle {
  double u1, J1, p1;
};

inline LinearStepOracle linear_step(double m, double c, double a, double u0,
                                    double J0, double p0, double f_step,
                                    double dt) {
  // (m/dt + c/2) u1 + (1/2) J1 = (m/dt + c/2) u0 + (1/2) J0 + f dt/2 + p0
  // -(1/2) u1 + (a/dt) J1 = (a/dt) J0 + (1/2) u0
  // Evaluated in extended precision so the oracle's own rounding stays well
  // below the tolerance it is used to enforce.
  using ld = long double;
  const ld a11 = static_cast<ld>(m) / dt + 0.5L * static_cast<ld>(c);
  const ld a12 = 0.5L;
  const ld a21 = -0.5L;
  const ld a22 = static_cast<ld>(a) / dt;
  const ld b1 = a11 * u0 + 0.5L * J0 + 0.5L * static_cast<ld>(f_step) * dt +
                static_cast<ld>(p0);
  const ld b2 = a22 * J0 + 0.5L * static_cast<ld>(u0);
  const ld det = a11 * a22 - a12 * a21;
  const ld u1 = (b1 * a22 - a12 * b2) / det;
  const ld J1 = (a11 * b2 - b1 * a21) / det;
  const ld p1 = static_cast<ld>(m) / dt * (u1 - u0) -
                0.5L * static_cast<ld>(c) * (u1 - u0) - 0.5L * (J1 - J0) +
                0.5L * static_cast<ld>(f_step) * dt;
  return {static_cast<double>(u1), static_cast<double>(J1),
          static_cast<double>(p1)};
}

// Positional uncertainty of a real root x of q when the polynomial is only
// evaluated in double precision: an evaluation error e moves a simple root
// by about e / |q'(x)| and a near-double root by about sqrt(2 e / |q''(x)|),
// whichever is smaller.
inline double root_uncertainty(const Cubic& q, double x) {
  const double ax = std::fabs(x);
  const double mag = ((std::fabs(q.A) * ax + std::fabs(q.B)) * ax +
                      std::fabs(q.C)) * ax + std::fabs(q.D);
  const double eps_res = 8.0 * std::numeric_limits<double>::epsilon() * mag;
  const double d1 = std::fabs((3.0 * q.A * x + 2.0 * q.B) * x + q.C);
  const double d2 = std::fabs(6.0 * q.A * x + 2.0 * q.B);
  const double tiny = std::numeric_limits<double>::min();
  const double lin = eps_res / std::max(d1, tiny);
  const double quad = std::sqrt(2.0 * eps_res / std::max(d2, tiny));
  return std::min(lin, quad);
}

// Closed-form solution of m u'' + c u' + k u = F0 cos(w t) for the
// underdamped case, from the particular integral plus decaying transient.
struct ForcedLinearSolution {
  double m, c, k, F0, w;
  double Ap, Bp, alpha, wd, C1, C2;

  ForcedLinearSolution(double m_, double c_, double k_, double F0_, double w_,
                       double u0, double v0)
      : m(m_), c(c_), k(k_), F0(F0_), w(w_) {
    const double den = (k - m * w * w) * (k - m * w * w) + (c * w) * (c * w);
    Ap = F0 * (k - m * w * w) / den;
    Bp = F0 * c * w / den;
    alpha = c / (2.0 * m);
    wd = std::sqrt(k / m - alpha * alpha);
    C1 = u0 - Ap;
    C2 = (v0 + alpha * C1 - w * Bp) / wd;
  }

  double u(double t) const {
    return std::exp(-alpha * t) *
               (C1 * std::cos(wd * t) + C2 * std::sin(wd * t)) +
           Ap * std::cos(w * t) + Bp * std::sin(w * t);
  }

  double v(double t) const {
    const double e = std::exp(-alpha * t);
    return -alpha * e * (C1 * std::cos(wd * t) + C2 * std::sin(wd * t)) +
           e * wd * (-C1 * std::sin(wd * t) + C2 * std::cos(wd * t)) -
           Ap * w * std::sin(w * t) + Bp * w * std::cos(w * t);
  }
};

// Gauss-Legendre 4-point rule on [0, 1]; exact for the quartic integrand of
// the weighted spring-force impulse.
inline double weighted_cubic_impulse(double beta, double dt, double u0,
                                     double u1) {
  static const double xs[4] = {0.069431844202973712, 0.330009478207571868,
                               0.669990521792428132, 0.930568155797026288};
  static const double ws[4] = {0.173927422568726929, 0.326072577431273071,
                               0.326072577431273071, 0.173927422568726929};
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double s = xs[i];
    const double u = u0 * (1.0 - s) + u1 * s;
    acc += ws[i] * u * u * u * (1.0 - s);
  }
  return beta * dt * acc;
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(std::log(lo), std::log(hi));
  return std::exp(d(rng));
}

inline double signed_log_uniform(std::mt19937_64& rng, double lo, double hi) {
  const double mag = log_uniform(rng, lo, hi);
  return (rng() & 1u) ? mag : -mag;
}

}  // namespace oracles
