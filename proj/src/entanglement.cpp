#include "hubbard/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include "hubbard/errors.hpp"
#include "hubbard/special_functions.hpp"

namespace hubbard {

namespace {
constexpr double kPopulationSlack = 1e-9;
}

void LocalDensityMatrix::validate() const {
  const Eigen::Vector4d d = diagonal();
  if ((d.array() < 0.0).any() || (d.array() > 1.0).any()) {
    throw DomainError("LocalDensityMatrix: population outside [0, 1]");
  }
  if (std::fabs(d.sum() - 1.0) > 1e-12) throw DomainError("LocalDensityMatrix: trace differs from 1");
}

LocalDensityMatrix populations(double w, double n_up, double n_dn) {
  if (!std::isfinite(w) || !std::isfinite(n_up) || !std::isfinite(n_dn)) {
    throw DomainError("populations: non-finite input");
  }
  if (w < -kPopulationSlack || w > std::min(n_up, n_dn) + kPopulationSlack ||
      n_up + n_dn - w > 1.0 + kPopulationSlack) {
    throw DomainError("populations: inconsistent double occupancy and densities");
  }
  Eigen::Vector4d p(1.0 - n_up - n_dn + w, n_up - w, n_dn - w, w);
  p = p.cwiseMax(0.0).cwiseMin(1.0);
  p /= p.sum();
  return {p[0], p[1], p[2], p[3]};
}

double von_neumann_entropy(const LocalDensityMatrix& rho) {
  std::array<double, 4> terms{entropy_term(rho.z), entropy_term(rho.u_plus),
                              entropy_term(rho.u_minus), entropy_term(rho.w)};
  std::sort(terms.begin(), terms.end());
  return ((terms[0] + terms[1]) + terms[2]) + terms[3];
}

double infinite_u_filling_curve(double n) {
  if (!(n >= 0.0 && n <= 1.0)) throw DomainError("infinite_u_filling_curve: filling outside [0, 1]");
  // Singly occupied sites split evenly between the two spin states.
  return entropy_term(1.0 - n) + 2.0 * entropy_term(n / 2.0);
}

}  // namespace hubbard
