#include "hubbard/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace hubbard {

namespace {

// Branch boundaries for the Bessel evaluators. The power series is used where
// its alternating terms stay below ~1e2 (extended precision absorbs that
// cancellation), the asymptotic expansion where its smallest term is below
// machine epsilon, and Miller's backward recurrence in between.
constexpr double kSeriesLimit = 8.0;
constexpr double kAsymptoticLimit = 25.0;

void require_finite(double x, const char* who) {
  if (!std::isfinite(x)) throw DomainError(std::string(who) + ": non-finite argument");
}

// sum_k (-1)^k (x/2)^{2k+n} / (k! (k+n)!) for n = 0, 1.
long double bessel_series(int order, long double x) {
  const long double q = -(x * x) / 4.0L;
  long double term = (order == 0) ? 1.0L : x / 2.0L;
  long double sum = term;
  for (int k = 1; k < 200; ++k) {
    term *= q / (static_cast<long double>(k) * static_cast<long double>(k + order));
    sum += term;
    if (std::fabs(term) < 1e-22L * std::fabs(sum) + 1e-30L) break;
  }
  return sum;
}

// Miller's algorithm: recur J_{n-1} = (2n/x) J_n - J_{n+1} downward from a
// start order well above x, normalized by J0 + 2 sum_k J_{2k} = 1.
struct BesselPair {
  long double j0;
  long double j1;
};

BesselPair bessel_miller(long double x) {
  const int start = 2 * static_cast<int>((x + 30.0L + 6.0L * std::sqrt(x)) / 2.0L);
  long double above = 0.0L;    // J_{n+1}
  long double current = 1e-300L;  // J_n
  long double norm = 0.0L;
  for (int n = start; n > 0; --n) {
    const long double below = (2.0L * n / x) * current - above;  // J_{n-1}
    above = current;
    current = below;
    if ((n - 1) % 2 == 0 && n > 1) norm += 2.0L * below;
    if (std::fabs(current) > 1e300L) {
      above *= 1e-300L;
      current *= 1e-300L;
      norm *= 1e-300L;
    }
  }
  norm += current;
  return {current / norm, above / norm};
}

// Hankel asymptotic expansion: J_n(x) = sqrt(2/(pi x)) [P cos(chi) - Q sin(chi)],
// chi = x - (2n+1) pi/4. The phase is expanded via cos x and sin x so the
// large argument is never shifted by a rounded pi/4.
double bessel_asymptotic(int order, double x) {
  const double mu = 4.0 * order * order;
  const double eight_x = 8.0 * x;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = 1.0;
  for (int k = 1; k < 120; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (mu - odd * odd) / (k * eight_x);
    if (k > 2 && std::fabs(next) > std::fabs(last)) break;
    last = next;
    term = next;
    // a_k / x^k feeds Q (odd k) or P (even k) with sign (-1)^floor(k/2).
    const double signed_term = ((k / 2) % 2 == 0) ? term : -term;
    if (k % 2 == 1) {
      q += signed_term;
    } else {
      p += signed_term;
    }
    if (std::fabs(term) < 1e-18) break;
  }
  const double c = std::cos(x);
  const double s = std::sin(x);
  double cos_chi;
  double sin_chi;
  if (order == 0) {
    cos_chi = (c + s) / std::numbers::sqrt2;
    sin_chi = (s - c) / std::numbers::sqrt2;
  } else {
    cos_chi = (s - c) / std::numbers::sqrt2;
    sin_chi = -(s + c) / std::numbers::sqrt2;
  }
  return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cos_chi - q * sin_chi);
}

double bessel_nonneg(int order, double ax) {
  if (ax <= kSeriesLimit) return static_cast<double>(bessel_series(order, ax));
  if (ax < kAsymptoticLimit) {
    const BesselPair pair = bessel_miller(ax);
    return static_cast<double>(order == 0 ? pair.j0 : pair.j1);
  }
  return bessel_asymptotic(order, ax);
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0)) throw DomainError("QuadratureSpec: abs_tol must be positive");
  if (panel_order < 4) throw DomainError("QuadratureSpec: panel_order must be >= 4");
  if (max_panels < 1) throw DomainError("QuadratureSpec: max_panels must be >= 1");
}

double bessel_j0(double x) {
  require_finite(x, "bessel_j0");
  return bessel_nonneg(0, std::fabs(x));
}

double bessel_j1(double x) {
  require_finite(x, "bessel_j1");
  const double value = bessel_nonneg(1, std::fabs(x));
  return x < 0.0 ? -value : value;
}

double bessel_j1_zero(int s) {
  if (s < 1) throw DomainError("bessel_j1_zero: index must be >= 1");
  const double beta = (s + 0.25) * std::numbers::pi;
  const double b8 = 8.0 * beta;
  // McMahon with mu = 4.
  double x = beta - 3.0 / b8 + 12.0 / (b8 * b8 * b8);
  for (int iter = 0; iter < 20; ++iter) {
    const double j1 = bessel_j1(x);
    const double dj1 = bessel_j0(x) - j1 / x;
    const double dx = j1 / dj1;
    x -= dx;
    if (std::fabs(dx) < 1e-15 * x) break;
  }
  return x;
}

double zeta_constant(int s) {
  switch (s) {
    case 3:
      return 1.2020569031595942854;
    case 5:
      return 1.0369277551433699263;
    default:
      throw DomainError("zeta_constant: only s = 3 and s = 5 are supported");
  }
}

}  // namespace hubbard
