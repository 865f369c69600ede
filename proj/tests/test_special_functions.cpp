#include "doctest.h"

#include <cmath>
#include <random>

#include "hubbard/special_functions.hpp"
#include "oracles.hpp"

using namespace hubbard;

TEST_CASE("bessel values at anchor points") {
  CHECK(bessel_j0(0.0) == 1.0);
  CHECK(bessel_j1(0.0) == 0.0);
  // Frozen from the 100-digit series oracle.
  CHECK(oracle::bessel_series(0, 1.0) == doctest::Approx(0.76519768655796655).epsilon(1e-16));
  CHECK(oracle::bessel_series(1, 1.0) == doctest::Approx(0.44005058574493351).epsilon(1e-16));
  CHECK(std::fabs(bessel_j0(1.0) - 0.76519768655796655) < 1e-15);
  CHECK(std::fabs(bessel_j1(1.0) - 0.44005058574493351) < 1e-15);
  CHECK(std::fabs(bessel_j0(2.40482555769577)) < 1e-13);
  CHECK(std::fabs(bessel_j1(3.83170597020751)) < 1e-13);
}

TEST_CASE("bessel agrees with the multiprecision series oracle on [0, 60]") {
  double worst = 0.0;
  for (double x = 0.0; x <= 60.0; x += 0.0371) {
    worst = std::max(worst, std::fabs(bessel_j0(x) - oracle::bessel_series(0, x)));
    worst = std::max(worst, std::fabs(bessel_j1(x) - oracle::bessel_series(1, x)));
  }
  // Branch seams.
  for (double x : {7.999999, 8.0, 8.000001, 24.99999, 25.0, 25.00001}) {
    worst = std::max(worst, std::fabs(bessel_j0(x) - oracle::bessel_series(0, x)));
    worst = std::max(worst, std::fabs(bessel_j1(x) - oracle::bessel_series(1, x)));
  }
  CHECK(worst <= 1e-14);
}

TEST_CASE("bessel agrees with a 50-digit reference for large arguments") {
  double worst = 0.0;
  for (double x : {61.3, 100.0, 333.3, 1000.0, 2718.28, 5000.5, 9999.9, 1e4}) {
    worst = std::max(worst, std::fabs(bessel_j0(x) - oracle::bessel_boost(0, x)));
    worst = std::max(worst, std::fabs(bessel_j1(x) - oracle::bessel_boost(1, x)));
  }
  CHECK(worst <= 1e-14);
}

TEST_CASE("bessel parity is exact") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.0, 200.0);
  for (int i = 0; i < 500; ++i) {
    const double x = dist(rng);
    CHECK(bessel_j0(-x) == bessel_j0(x));
    CHECK(bessel_j1(-x) == -bessel_j1(x));
  }
}

TEST_CASE("bessel recurrence J0 + J2 = (2/x) J1") {
  // J2 from the series machinery, test-only.
  double worst = 0.0;
  for (double x = 0.1; x <= 50.0; x += 0.1) {
    const double j2 = oracle::bessel_series(2, x);
    worst = std::max(worst, std::fabs(bessel_j0(x) + j2 - 2.0 / x * bessel_j1(x)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("bessel rejects non-finite input") {
  CHECK_THROWS_AS(bessel_j0(std::nan("")), DomainError);
  CHECK_THROWS_AS(bessel_j1(INFINITY), DomainError);
}

TEST_CASE("J1 zeros") {
  CHECK(bessel_j1_zero(1) == doctest::Approx(3.8317059702075123).epsilon(1e-15));
  CHECK(bessel_j1_zero(2) == doctest::Approx(7.0155866698156188).epsilon(1e-15));
  for (int s : {1, 5, 40, 1000}) {
    CHECK(std::fabs(bessel_j1(bessel_j1_zero(s))) < 1e-14);
  }
  CHECK_THROWS_AS(bessel_j1_zero(0), DomainError);
}

TEST_CASE("entropy_term") {
  CHECK(entropy_term(0.0) == 0.0);
  CHECK(entropy_term(0.5) == 0.5);
  CHECK(entropy_term(0.25) == 0.5);
  CHECK(entropy_term(1.0) == 0.0);
  CHECK(entropy_term(-5e-13) == 0.0);
  CHECK(entropy_term(1.0 + 5e-13) == 0.0);
  CHECK_THROWS_AS(entropy_term(-1e-9), DomainError);
  CHECK_THROWS_AS(entropy_term(1.0 + 1e-9), DomainError);
  CHECK(entropy_term(0.3L) == doctest::Approx(static_cast<double>(-0.3L * std::log2(0.3L))));
}

TEST_CASE("entropy_term is concave") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 10000; ++i) {
    const double p = unit(rng);
    const double q = unit(rng);
    const double t = unit(rng);
    const double lhs = entropy_term(t * p + (1.0 - t) * q);
    const double rhs = t * entropy_term(p) + (1.0 - t) * entropy_term(q);
    REQUIRE(lhs >= rhs - 1e-12);
  }
}

TEST_CASE("zeta constants reproduce the series oracle") {
  CHECK(std::fabs(oracle::zeta(3) - 1.2020569031595943) < 1e-15);
  CHECK(std::fabs(oracle::zeta(5) - 1.0369277551433699) < 1e-15);
  CHECK(std::fabs(zeta_constant(3) - oracle::zeta(3)) < 1e-14);
  CHECK(std::fabs(zeta_constant(5) - oracle::zeta(5)) < 1e-14);
  CHECK_THROWS_AS(zeta_constant(2), DomainError);
}

TEST_CASE("gauss-legendre rules integrate polynomials exactly") {
  for (int n : {1, 4, 7, 20, 32}) {
    const auto rule = gauss_legendre<double>(n);
    CHECK(rule.weights.sum() == doctest::Approx(2.0).epsilon(1e-14));
    // x^(2n-2) over [0, 1] is 1/(2n-1)
    const int deg = 2 * n - 2;
    const double got = rule.integrate([deg](double x) { return std::pow(x, deg); }, 0.0, 1.0);
    CHECK(got == doctest::Approx(1.0 / (deg + 1)).epsilon(1e-13));
  }
  const auto rule_ld = gauss_legendre<long double>(10);
  CHECK(static_cast<double>(rule_ld.integrate([](long double x) { return std::exp(x); }, 0.0L, 1.0L)) ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-15));
}

TEST_CASE("quadrature spec validation") {
  QuadratureSpec spec;
  CHECK_NOTHROW(spec.validate());
  spec.panel_order = 3;
  CHECK_THROWS_AS(spec.validate(), DomainError);
  spec = QuadratureSpec{};
  spec.abs_tol = 0.0;
  CHECK_THROWS_AS(spec.validate(), DomainError);
  spec = QuadratureSpec{};
  spec.max_panels = 0;
  CHECK_THROWS_AS(spec.validate(), DomainError);
}
