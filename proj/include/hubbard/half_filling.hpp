#pragma once

#include "hubbard/entanglement.hpp"
#include "hubbard/special_functions.hpp"

namespace hubbard {

enum class SeriesRegime { strong_coupling, weak_coupling };

/// Thermodynamic-limit double occupancy at half filling,
///   w(U) = int_0^inf J0(x) J1(x) / (1 + cosh(U x / 2)) dx,
/// for U >= 0, and w(U) = 1/2 - w(-U) for U < 0. U = +-inf gives 0 and 1/2.
///
/// The half line is cut into panels at the zeros of J1 (plus a geometric
/// refinement of the first panel on the decay scale 2/U for large U). Each
/// panel is integrated by adaptive Gauss-Legendre; summation stops once the
/// last panel and a rigorous bound on the exponential tail are below
/// spec.abs_tol. For |U| < 1e-3 the weak-coupling series is returned.
///
/// Throws ConvergenceError (with the partial sum) if spec.max_panels is hit.
double double_occupancy_integral(double U, const QuadratureSpec& spec = {});

/// Half-filling populations (z, u+, u-, w) = (w, 1/2 - w, 1/2 - w, w).
LocalDensityMatrix half_filling_density_matrix(double w);

/// E_v = -2 w log2 w - 2 (1/2 - w) log2 (1/2 - w) with w from the integral.
double local_entanglement_half_filling(double U, const QuadratureSpec& spec = {});

/// Truncated expansions of w:
///   strong (U >= 8):  4 ln2 / U^2 - 27 zeta(3) / U^4 + 375 zeta(5) / U^6
///   weak  (|U| <= 1): 1/4 - 7 zeta(3) U / (8 pi^3) - 93 zeta(5) U^3 / (2^9 pi^5)
double series_double_occupancy(double U, SeriesRegime regime);

/// Truncated expansions of E_v, as printed:
///   strong: 1 + 16 ln U / U^2
///   weak:   2 - [7 zeta(3) U / (2 pi^3)]^2 / ln 2
double series_entanglement(double U, SeriesRegime regime);

/// E_v from the half-filling entropy formula evaluated at the series value of w.
double series_entanglement_from_double_occupancy(double U, SeriesRegime regime);

}  // namespace hubbard
