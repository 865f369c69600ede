#pragma once

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "hubbard/errors.hpp"

namespace hubbard {

/// Controls the panel quadrature used for the half-filling double occupancy.
struct QuadratureSpec {
  double abs_tol = 1e-10;
  int panel_order = 20;
  int max_panels = 100000;

  void validate() const;
};

/// Bessel function of the first kind, order 0.
double bessel_j0(double x);

/// Bessel function of the first kind, order 1.
double bessel_j1(double x);

/// s-th positive zero of J1 (s >= 1), refined by Newton from McMahon's expansion.
double bessel_j1_zero(int s);

/// Riemann zeta at s = 3 or s = 5.
double zeta_constant(int s);

/// -p log2 p with the continuous extension 0 at p = 0.
///
/// Values within 1e-12 below 0 or above 1 are clamped; anything further out
/// throws DomainError.
template <typename Scalar>
Scalar entropy_term(Scalar p) {
  constexpr Scalar slack = Scalar(1e-12);
  if (!(p >= -slack && p <= Scalar(1) + slack)) {
    throw DomainError("entropy_term: probability outside [0, 1]");
  }
  if (p <= Scalar(0)) return Scalar(0);
  if (p >= Scalar(1)) return Scalar(0);
  using std::log2;
  return -p * log2(p);
}

/// Gauss-Legendre nodes and weights on [-1, 1].
template <typename Scalar>
struct GaussLegendreRule {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Vector nodes;
  Vector weights;

  /// Integrates f over [a, b] with the rule mapped affinely.
  template <typename F>
  Scalar integrate(F&& f, Scalar a, Scalar b) const {
    const Scalar half = (b - a) / Scalar(2);
    const Scalar mid = (b + a) / Scalar(2);
    Scalar sum(0);
    for (Eigen::Index i = 0; i < nodes.size(); ++i) {
      sum += weights[i] * f(mid + half * nodes[i]);
    }
    return half * sum;
  }
};

/// Builds an n-point Gauss-Legendre rule by Newton iteration on P_n.
template <typename Scalar>
GaussLegendreRule<Scalar> gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: order must be positive");
  using std::abs;
  using std::cos;
  GaussLegendreRule<Scalar> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  if (n == 1) {
    rule.nodes[0] = Scalar(0);
    rule.weights[0] = Scalar(2);
    return rule;
  }
  // P_n(x) and P_n'(x) by the three-term recurrence.
  const auto legendre = [n](Scalar x) {
    Scalar p0(1);
    Scalar p1 = x;
    for (int k = 2; k <= n; ++k) {
      const Scalar p2 = (Scalar(2 * k - 1) * x * p1 - Scalar(k - 1) * p0) / Scalar(k);
      p0 = p1;
      p1 = p2;
    }
    return std::pair<Scalar, Scalar>{p1, Scalar(n) * (x * p1 - p0) / (x * x - Scalar(1))};
  };
  const Scalar pi = std::numbers::pi_v<Scalar>;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Scalar x = cos(pi * (Scalar(i) + Scalar(0.75)) / (Scalar(n) + Scalar(0.5)));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(x);
      const Scalar dx = p / dp;
      x -= dx;
      if (abs(dx) <= std::numeric_limits<Scalar>::epsilon() * Scalar(4)) break;
    }
    const Scalar dp = legendre(x).second;
    const Scalar w = Scalar(2) / ((Scalar(1) - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = Scalar(0);
  return rule;
}

}  // namespace hubbard
