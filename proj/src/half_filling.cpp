#include "hubbard/half_filling.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "hubbard/errors.hpp"

namespace hubbard {

namespace {

constexpr double kSmallCoupling = 1e-3;
constexpr int kMaxBisectionDepth = 40;

double integrand(double x, double U) {
  return bessel_j0(x) * bessel_j1(x) / (1.0 + std::cosh(0.5 * U * x));
}

// Adaptive Gauss-Legendre on [a, b]: accept when the one-panel and the
// two-half-panel estimates agree to `tol`.
struct PanelResult {
  double value = 0.0;
  double error = 0.0;
};

template <typename F>
PanelResult adaptive_panel(const GaussLegendreRule<double>& rule, F&& f, double a, double b,
                           double whole, double tol, int depth) {
  const double mid = 0.5 * (a + b);
  const double left = rule.integrate(f, a, mid);
  const double right = rule.integrate(f, mid, b);
  const double refined = left + right;
  const double diff = std::fabs(refined - whole);
  if (diff <= tol || depth >= kMaxBisectionDepth) return {refined, diff};
  const PanelResult l = adaptive_panel(rule, f, a, mid, left, 0.5 * tol, depth + 1);
  const PanelResult r = adaptive_panel(rule, f, mid, b, right, 0.5 * tol, depth + 1);
  return {l.value + r.value, l.error + r.error};
}

// int_{x}^inf 2 exp(-U t / 2) / t dt, bounding the tail using |J0 J1| <= 1/t
// and 1 / (1 + cosh s) <= 2 exp(-s).
double tail_bound(double x, double U) { return 4.0 / (U * x) * std::exp(-0.5 * U * x); }

double integrate_positive(double U, const QuadratureSpec& spec) {
  const auto rule = gauss_legendre<double>(spec.panel_order);
  const auto f = [U](double x) { return integrand(x, U); };
  const double local_tol = 1e-2 * spec.abs_tol;

  std::vector<double> edges{0.0};
  const double first_zero = bessel_j1_zero(1);
  for (double edge = 2.0 / U; edge < first_zero; edge *= 2.0) edges.push_back(edge);
  edges.push_back(first_zero);

  double sum = 0.0;
  double error = 0.0;
  int panels = 0;
  int zero_index = 1;
  double a = 0.0;
  std::size_t next_edge = 1;
  while (true) {
    double b;
    if (next_edge < edges.size()) {
      b = edges[next_edge++];
    } else {
      b = bessel_j1_zero(++zero_index);
    }
    const PanelResult panel = adaptive_panel(rule, f, a, b, rule.integrate(f, a, b), local_tol, 0);
    sum += panel.value;
    error += panel.error;
    ++panels;
    const double tail = tail_bound(b, U);
    if (next_edge >= edges.size() && std::fabs(panel.value) < spec.abs_tol && tail < 0.1 * spec.abs_tol) {
      break;
    }
    if (panels >= spec.max_panels) {
      throw ConvergenceError("double_occupancy_integral: panel budget exhausted", sum, error + tail);
    }
    a = b;
  }
  return sum;
}

}  // namespace

double double_occupancy_integral(double U, const QuadratureSpec& spec) {
  spec.validate();
  if (std::isnan(U)) throw DomainError("double_occupancy_integral: coupling is NaN");
  if (U < 0.0) return 0.5 - double_occupancy_integral(-U, spec);
  if (std::isinf(U)) return 0.0;
  if (U < kSmallCoupling) return series_double_occupancy(U, SeriesRegime::weak_coupling);
  return integrate_positive(U, spec);
}

LocalDensityMatrix half_filling_density_matrix(double w) { return populations(w, 0.5, 0.5); }

double local_entanglement_half_filling(double U, const QuadratureSpec& spec) {
  const double w = double_occupancy_integral(U, spec);
  return 2.0 * entropy_term(w) + 2.0 * entropy_term(0.5 - w);
}

double series_double_occupancy(double U, SeriesRegime regime) {
  using std::numbers::pi;
  if (regime == SeriesRegime::strong_coupling) {
    if (!(U >= 8.0)) throw DomainError("strong-coupling series requires U >= 8");
    if (std::isinf(U)) return 0.0;
    const double u2 = U * U;
    return 4.0 * std::numbers::ln2 / u2 - 27.0 * zeta_constant(3) / (u2 * u2) +
           375.0 * zeta_constant(5) / (u2 * u2 * u2);
  }
  if (!(std::fabs(U) <= 1.0)) throw DomainError("weak-coupling series requires |U| <= 1");
  return 0.25 - 7.0 * zeta_constant(3) * U / (8.0 * pi * pi * pi) -
         93.0 * zeta_constant(5) * U * U * U / (512.0 * std::pow(pi, 5));
}

double series_entanglement(double U, SeriesRegime regime) {
  using std::numbers::pi;
  if (regime == SeriesRegime::strong_coupling) {
    if (!(U >= 8.0)) throw DomainError("strong-coupling series requires U >= 8");
    if (std::isinf(U)) return 1.0;
    return 1.0 + 16.0 * std::log(U) / (U * U);
  }
  if (!(std::fabs(U) <= 1.0)) throw DomainError("weak-coupling series requires |U| <= 1");
  const double x = 7.0 * zeta_constant(3) * U / (2.0 * pi * pi * pi);
  return 2.0 - x * x / std::numbers::ln2;
}

double series_entanglement_from_double_occupancy(double U, SeriesRegime regime) {
  const double w = series_double_occupancy(U, regime);
  return 2.0 * entropy_term(w) + 2.0 * entropy_term(0.5 - w);
}

}  // namespace hubbard
