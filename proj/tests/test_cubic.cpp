#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ehp/cubic.hpp"
#include "support/oracles.hpp"

using ehp::cubic::Analysis;
using ehp::cubic::analyze;
using ehp::cubic::Coefficients;
using ehp::cubic::select_root;
using ehp::cubic::solve_degenerate;

TEST_CASE("single real root cubics") {
  // x^3 - 1
  const Analysis a = analyze({1.0, 0.0, 0.0, -1.0});
  CHECK(a.n_real_roots == 1);
  CHECK(a.roots[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(a.disc == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(a.r == -1.0);
  CHECK(a.s == 0.0);
}

TEST_CASE("three distinct real roots") {
  // x^3 - 3x = x (x - sqrt3) (x + sqrt3)
  const Analysis a = analyze({1.0, 0.0, -3.0, 0.0});
  REQUIRE(a.n_real_roots == 3);
  CHECK(a.disc == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(a.roots[0] == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-14));
  CHECK(a.roots[1] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(a.roots[2] == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));

  // 2 (x+3) (x-1) (x-4)
  const Analysis b = analyze({2.0, -4.0, -22.0, 24.0});
  REQUIRE(b.n_real_roots == 3);
  CHECK(b.roots[0] == doctest::Approx(-3.0).epsilon(1e-13));
  CHECK(b.roots[1] == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(b.roots[2] == doctest::Approx(4.0).epsilon(1e-13));

  // Two roots near the origin under a leading coefficient six orders of
  // magnitude smaller than the quadratic one: the closed-form construction
  // loses their separation to the variable shift, so this pins the deflated
  // re-solve. Expected values from a 50-digit reference solve.
  const Analysis c = analyze({0.0010136341015937306, -881.21431482615583,
                              5.922837602324365, 0.0022481175297290167});
  REQUIRE(c.n_real_roots == 3);
  CHECK(c.roots[0] == doctest::Approx(-0.0003602578128194563).epsilon(1e-12));
  CHECK(c.roots[1] == doctest::Approx(0.007081480506381243).epsilon(1e-12));
  CHECK(c.roots[2] == doctest::Approx(869361.3470854695).epsilon(1e-12));
}

TEST_CASE("repeated roots collapse in the classification band") {
  // (x-1)^2 (x-2) = x^3 - 4x^2 + 5x - 2
  const Analysis a = analyze({1.0, -4.0, 5.0, -2.0});
  REQUIRE(a.n_real_roots == 2);
  CHECK(a.roots[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(a.roots[1] == doctest::Approx(2.0).epsilon(1e-12));

  // (x-2)^3 = x^3 - 6x^2 + 12x - 8
  const Analysis b = analyze({1.0, -6.0, 12.0, -8.0});
  REQUIRE(b.n_real_roots == 1);
  CHECK(b.roots[0] == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("analyze rejects degenerate and non-finite input") {
  CHECK_THROWS_AS(analyze({0.0, 1.0, 2.0, 3.0}), ehp::DegenerateCubic);
  CHECK_THROWS_AS(analyze({1e-20, 1.0, 2.0, 3.0}), ehp::DegenerateCubic);
  CHECK_THROWS_AS(analyze({std::nan(""), 1.0, 2.0, 3.0}),
                  ehp::NonFiniteInput);
}

TEST_CASE("roots satisfy the residual bound") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 2000; ++trial) {
    Coefficients q{oracles::signed_log_uniform(rng, 1e-3, 1e3),
                   oracles::signed_log_uniform(rng, 1e-3, 1e3),
                   oracles::signed_log_uniform(rng, 1e-3, 1e3),
                   oracles::signed_log_uniform(rng, 1e-3, 1e3)};
    const Analysis a = analyze(q);
    for (const double x : a.real_roots()) {
      const double ax = std::fabs(x);
      const double scale =
          std::max({std::fabs(q.A) * ax * ax * ax, std::fabs(q.B) * ax * ax,
                    std::fabs(q.C) * ax, std::fabs(q.D), 1.0});
      CHECK(std::fabs(ehp::cubic::evaluate(q, x)) <=
            ehp::cubic::kRootResidualRel * scale);
    }
  }
}

TEST_CASE("root sets match the bisection enumeration") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 2000; ++trial) {
    Coefficients q{oracles::signed_log_uniform(rng, 1e-3, 1e3),
                   oracles::signed_log_uniform(rng, 1e-3, 1e3),
                   oracles::signed_log_uniform(rng, 1e-3, 1e3),
                   oracles::signed_log_uniform(rng, 1e-3, 1e3)};
    const Analysis a = analyze(q);
    const std::vector<double> expected =
        oracles::enumerate_roots({q.A, q.B, q.C, q.D}, 1e-12);
    REQUIRE(a.n_real_roots == static_cast<int>(expected.size()));
    const double R =
        2.0 + std::max({std::fabs(q.B), std::fabs(q.C), std::fabs(q.D)}) /
                  std::fabs(q.A);
    for (int i = 0; i < a.n_real_roots; ++i) {
      CHECK(std::fabs(a.roots[i] - expected[i]) <= 1e-10 * R);
    }
  }
}

TEST_CASE("classification and roots are scale invariant") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 500; ++trial) {
    const Coefficients q{oracles::signed_log_uniform(rng, 1e-2, 1e2),
                         oracles::signed_log_uniform(rng, 1e-2, 1e2),
                         oracles::signed_log_uniform(rng, 1e-2, 1e2),
                         oracles::signed_log_uniform(rng, 1e-2, 1e2)};
    const double lambda = oracles::log_uniform(rng, 1e-6, 1e6);
    const Analysis a = analyze(q);
    const Analysis b =
        analyze({lambda * q.A, lambda * q.B, lambda * q.C, lambda * q.D});
    REQUIRE(a.n_real_roots == b.n_real_roots);
    for (int i = 0; i < a.n_real_roots; ++i) {
      CHECK(a.roots[i] ==
            doctest::Approx(b.roots[i]).epsilon(1e-10).scale(1.0));
    }
  }
}

TEST_CASE("degenerate solves") {
  SUBCASE("quadratic with two roots") {
    const std::vector<double> r = solve_degenerate({0.0, 1.0, 0.0, -4.0});
    REQUIRE(r.size() == 2);
    CHECK(r[0] == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(r[1] == doctest::Approx(2.0).epsilon(1e-15));
  }
  SUBCASE("quadratic with distant roots stays accurate") {
    const std::vector<double> r = solve_degenerate({0.0, 1.0, -1e8, 1.0});
    REQUIRE(r.size() == 2);
    CHECK(r[0] == doctest::Approx(1e-8).epsilon(1e-12));
    CHECK(r[1] == doctest::Approx(1e8).epsilon(1e-12));
  }
  SUBCASE("quadratic with no real roots") {
    CHECK(solve_degenerate({0.0, 1.0, 0.0, 1.0}).empty());
  }
  SUBCASE("linear") {
    const std::vector<double> r = solve_degenerate({0.0, 0.0, 2.0, -4.0});
    REQUIRE(r.size() == 1);
    CHECK(r[0] == 2.0);
  }
  SUBCASE("constant cases") {
    CHECK_THROWS_AS(solve_degenerate({0.0, 0.0, 0.0, 5.0}), ehp::NoSolution);
    CHECK_THROWS_AS(solve_degenerate({0.0, 0.0, 0.0, 0.0}),
                    ehp::IndeterminateSolution);
  }
  SUBCASE("quadratic roots match bisection on the residual") {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 500; ++trial) {
      const double B = oracles::signed_log_uniform(rng, 1e-2, 1e2);
      const double C = oracles::signed_log_uniform(rng, 1e-2, 1e2);
      const double D = oracles::signed_log_uniform(rng, 1e-2, 1e2);
      for (const double x : solve_degenerate({0.0, B, C, D})) {
        const double res = (B * x + C) * x + D;
        const double scale =
            std::max({std::fabs(B) * x * x, std::fabs(C * x), std::fabs(D),
                      1.0});
        CHECK(std::fabs(res) <= 1e-12 * scale);
      }
    }
  }
}

TEST_CASE("root selection picks the nearest root") {
  const double one[] = {2.0};
  auto c = select_root({one, 1}, 5.0);
  CHECK(c.value == 2.0);
  CHECK_FALSE(c.ambiguous);

  const double three[] = {-3.0, 1.0, 4.0};
  c = select_root({three, 3}, 0.9);
  CHECK(c.value == 1.0);
  CHECK(c.ambiguous);

  // equidistant pair: smaller root wins
  const double pair[] = {-1.0, 1.0};
  c = select_root({pair, 2}, 0.0);
  CHECK(c.value == -1.0);
  CHECK(c.ambiguous);

  CHECK_THROWS_AS(select_root({}, 0.0), ehp::EmptyRootSet);
}

TEST_CASE("uniqueness condition") {
  const ehp::DuffingSystem hard(1.0, 0.2, 1.0, 0.1);

  SUBCASE("hard spring at small step is unique") {
    const auto u = ehp::cubic::uniqueness_condition(hard, 3.0, 0.01);
    CHECK(u.satisfied);
    CHECK(u.s > 1e6);
  }

  SUBCASE("zero displacement reduces s to the linear coefficient ratio") {
    const auto u = ehp::cubic::uniqueness_condition(hard, 0.0, 0.01);
    const auto q = ehp::cubic::step_coefficients(1.0, 0.2, 1.0, 0.1, 0.0, 0.0,
                                                 0.0, 0.01);
    CHECK(u.s == q.C / q.A);
  }

  SUBCASE("inverted well at fine step is unique") {
    const ehp::DuffingSystem inv(1.0, 0.3, -1.0, 1.0);
    const auto u = ehp::cubic::uniqueness_condition(inv, 1.0, 0.001);
    CHECK(u.satisfied);
    const auto q = ehp::cubic::step_coefficients(1.0, 0.3, -1.0, 1.0, 1.0,
                                                 0.0, 0.2, 0.001);
    CHECK(analyze(q).n_real_roots == 1);
  }

  SUBCASE("requires a cubic term") {
    const ehp::DuffingSystem linear(1.0, 0.2, 1.0, 0.0);
    CHECK_THROWS_AS(ehp::cubic::uniqueness_condition(linear, 1.0, 0.01),
                    ehp::DegenerateCubic);
  }

  SUBCASE("satisfied implies a single real root for any momentum and force") {
    std::mt19937_64 rng(45);
    int satisfied_count = 0;
    for (int trial = 0; trial < 500; ++trial) {
      const double m = oracles::log_uniform(rng, 0.1, 10.0);
      const double c = oracles::log_uniform(rng, 1e-3, 2.0);
      const double k = oracles::signed_log_uniform(rng, 0.1, 10.0);
      const double beta = oracles::signed_log_uniform(rng, 1e-2, 10.0);
      const double u0 = oracles::signed_log_uniform(rng, 1e-2, 3.0);
      const double dt = oracles::log_uniform(rng, 1e-3, 0.5);
      const ehp::DuffingSystem sys(m, c, k, beta);
      const auto uq = ehp::cubic::uniqueness_condition(sys, u0, dt);
      if (!uq.satisfied) continue;
      ++satisfied_count;
      const double p0 = oracles::signed_log_uniform(rng, 1e-2, 3.0);
      const double f = oracles::signed_log_uniform(rng, 1e-2, 1.0);
      const auto q = ehp::cubic::step_coefficients(m, c, sys.a(), beta, u0,
                                                   p0, f, dt);
      CHECK(analyze(q).n_real_roots == 1);
    }
    CHECK(satisfied_count > 100);
  }
}
