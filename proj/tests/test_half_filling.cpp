#include "doctest.h"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <numbers>

#include "hubbard/errors.hpp"
#include "hubbard/half_filling.hpp"

using namespace hubbard;

namespace {

// Independent route: Boost Bessel functions under adaptive Gauss-Kronrod on
// a truncated interval whose neglected tail is below 1e-20.
double kronrod_double_occupancy(double U) {
  const auto f = [U](double x) {
    return boost::math::cyl_bessel_j(0, x) * boost::math::cyl_bessel_j(1, x) / (1.0 + std::cosh(0.5 * U * x));
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 100.0 / U, 15, 1e-13);
}

}  // namespace

TEST_CASE("double occupancy anchors") {
  CHECK(double_occupancy_integral(0.0) == 0.25);
  CHECK(double_occupancy_integral(1e6) < 1e-11);
  CHECK(double_occupancy_integral(INFINITY) == 0.0);
  CHECK(double_occupancy_integral(-INFINITY) == 0.5);
  CHECK(double_occupancy_integral(-4.0) == 0.5 - double_occupancy_integral(4.0));
}

TEST_CASE("double occupancy matches an independent quadrature") {
  for (double U : {1.0, 2.0, 4.0, 8.0}) {
    CAPTURE(U);
    CHECK(std::fabs(double_occupancy_integral(U) - kronrod_double_occupancy(U)) <= 1e-9);
  }
}

TEST_CASE("double occupancy reports panel exhaustion") {
  QuadratureSpec spec;
  spec.max_panels = 3;
  try {
    (void)double_occupancy_integral(0.01, spec);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.partial_value() > 0.0);
    CHECK(e.error_estimate() > spec.abs_tol);
  }
}

TEST_CASE("double occupancy is strictly decreasing and bounded") {
  double previous = 1.0;
  for (double U = -8.0; U <= 8.0 + 1e-12; U += 0.25) {
    const double w = double_occupancy_integral(U);
    CHECK(w >= 0.0);
    CHECK(w <= 0.5);
    CHECK(w < previous);
    previous = w;
  }
}

TEST_CASE("half-filling entanglement") {
  CHECK(local_entanglement_half_filling(0.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(local_entanglement_half_filling(INFINITY) == 1.0);
  CHECK(local_entanglement_half_filling(-INFINITY) == 1.0);
  CHECK(std::fabs(local_entanglement_half_filling(1e6) - 1.0) < 1e-9);
  CHECK(std::fabs(local_entanglement_half_filling(-1e6) - 1.0) < 1e-9);
  for (double U : {0.5, 1.0, 2.0, 4.0, 6.0, 8.0}) {
    CAPTURE(U);
    CHECK(std::fabs(local_entanglement_half_filling(U) - local_entanglement_half_filling(-U)) <= 1e-10);
  }
}

TEST_CASE("half-filling entanglement peaks at U = 0 and stays in [1, 2]") {
  double best = -1.0;
  double best_u = 99.0;
  for (int i = -40; i <= 40; ++i) {
    const double U = 0.2 * i;
    const double ev = local_entanglement_half_filling(U);
    CHECK(ev >= 1.0);
    CHECK(ev <= 2.0);
    if (ev > best) {
      best = ev;
      best_u = U;
    }
  }
  CHECK(best_u == 0.0);
}

TEST_CASE("entropy formula agrees with the general density-matrix entropy") {
  for (double U : {-6.0, -1.0, 0.0, 0.3, 2.0, 10.0, 50.0}) {
    const double w = double_occupancy_integral(U);
    const double general = von_neumann_entropy(half_filling_density_matrix(w));
    CHECK(std::fabs(local_entanglement_half_filling(U) - general) <= 1e-14);
  }
}

TEST_CASE("series expansions") {
  using std::numbers::ln2;
  using std::numbers::pi;
  const double z3 = 1.2020569031595943;
  const double z5 = 1.0369277551433699;
  const double strong20 = 4 * ln2 / 400.0 - 27 * z3 / 160000.0 + 375 * z5 / 6.4e7;
  CHECK(series_double_occupancy(20.0, SeriesRegime::strong_coupling) == doctest::Approx(strong20).epsilon(1e-15));
  CHECK(strong20 == doctest::Approx(6.7347e-3).epsilon(1e-4));
  CHECK(series_double_occupancy(0.0, SeriesRegime::weak_coupling) == 0.25);
  CHECK_THROWS_AS(series_double_occupancy(20.0, SeriesRegime::weak_coupling), DomainError);
  CHECK_THROWS_AS(series_double_occupancy(4.0, SeriesRegime::strong_coupling), DomainError);

  CHECK(series_entanglement(0.0, SeriesRegime::weak_coupling) == 2.0);
  const double x = 7 * z3 * 0.2 / (2 * pi * pi * pi);
  CHECK(series_entanglement(0.2, SeriesRegime::weak_coupling) == doctest::Approx(2.0 - x * x / ln2).epsilon(1e-15));
  CHECK(series_entanglement(1e6, SeriesRegime::strong_coupling) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_THROWS_AS(series_entanglement(1.5, SeriesRegime::weak_coupling), DomainError);
  CHECK_THROWS_AS(series_entanglement(7.9, SeriesRegime::strong_coupling), DomainError);
}

TEST_CASE("series agree with the integral inside their windows") {
  CHECK(std::fabs(double_occupancy_integral(20.0) - series_double_occupancy(20.0, SeriesRegime::strong_coupling)) <= 1e-6);
  CHECK(std::fabs(double_occupancy_integral(40.0) - series_double_occupancy(40.0, SeriesRegime::strong_coupling)) <= 1e-8);
  for (double U : {-0.5, -0.25, -0.1, 0.1, 0.25, 0.5}) {
    CAPTURE(U);
    CHECK(std::fabs(double_occupancy_integral(U) - series_double_occupancy(U, SeriesRegime::weak_coupling)) <= 1e-4);
  }
  // The entropy of the strong-coupling w series tracks the integral closely;
  // the printed 1 + 16 ln U / U^2 only shares its leading behavior.
  for (double U : {20.0, 40.0, 200.0}) {
    const double exact = local_entanglement_half_filling(U);
    CHECK(std::fabs(exact - series_entanglement_from_double_occupancy(U, SeriesRegime::strong_coupling)) < 1e-5);
    CHECK(series_entanglement(U, SeriesRegime::strong_coupling) > exact);
  }
}
