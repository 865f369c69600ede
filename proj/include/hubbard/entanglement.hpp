#pragma once

#include <Eigen/Core>

#include <array>

namespace hubbard {

/// Diagonal single-site reduced density matrix in the basis
/// |0>, |up>, |down>, |up down>.
struct LocalDensityMatrix {
  double z = 1.0;
  double u_plus = 0.0;
  double u_minus = 0.0;
  double w = 0.0;

  Eigen::Vector4d diagonal() const { return {z, u_plus, u_minus, w}; }
  Eigen::Matrix4d matrix() const { return diagonal().asDiagonal(); }

  /// Throws DomainError unless every entry is in [0, 1] and the trace is 1 (1e-12).
  void validate() const;
};

/// Populations from double occupancy and spin-resolved densities:
/// u+ = n_up - w, u- = n_dn - w, z = 1 - n_up - n_dn + w.
LocalDensityMatrix populations(double w, double n_up, double n_dn);

/// Local entanglement -sum p log2 p, in bits.
///
/// Terms are accumulated in sorted order, so any relabeling of the four
/// populations gives a bit-identical result.
double von_neumann_entropy(const LocalDensityMatrix& rho);

/// Infinite-coupling filling curve -(1-n) log2(1-n) - n log2(n/2) for n in [0, 1].
double infinite_u_filling_curve(double n);

}  // namespace hubbard
