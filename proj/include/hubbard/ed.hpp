#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <utility>
#include <vector>

#include "hubbard/entanglement.hpp"

namespace hubbard::ed {

/// Largest ring the dense oracle accepts.
inline constexpr int kMaxSites = 8;

/// Occupation-number basis of one (n_up, n_dn) sector. Bit j of a mask is
/// site j. States are ordered lexicographically by (up mask, down mask).
struct SectorBasis {
  int L = 0;
  int n_up = 0;
  int n_dn = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> states;

  Eigen::Index size() const { return static_cast<Eigen::Index>(states.size()); }
  /// Position of (up, dn) in `states`, or -1.
  Eigen::Index index_of(std::uint32_t up, std::uint32_t dn) const;

 private:
  friend SectorBasis build_basis(int, int, int);
  std::vector<std::int32_t> up_rank_;
  std::vector<std::int32_t> dn_rank_;
  std::int32_t dn_count_ = 0;
};

struct SectorState {
  SectorBasis basis;
  double energy = 0.0;
  Eigen::VectorXd amplitudes;
  bool degeneracy_flag = false;
  double gap = 0.0;  ///< E_1 - E_0 within the sector (0 for a 1x1 sector)
};

/// Throws CapacityError for L > kMaxSites, DomainError for bad counts.
SectorBasis build_basis(int L, int n_up, int n_dn);

/// Dense matrix of the ring Hamiltonian
///   H = -sum_{j,s} (c+_{j s} c_{j+1 s} + h.c.) + U sum_j n_{j up} n_{j dn}
/// with periodic boundary j+1 = 0 for j = L-1. Fermion signs follow the
/// orbital order "all up sites, then all down sites", so a hop picks up
/// (-1)^(occupied same-spin sites strictly between its endpoints), which
/// includes the ring-crossing factor. For L = 2 the single bond is counted
/// twice, as the literal sum prescribes.
Eigen::MatrixXd build_hamiltonian(const SectorBasis& basis, double U);

/// Lowest eigenpair of the sector Hamiltonian by dense diagonalization.
/// The amplitude sign is fixed by making the largest component positive.
SectorState ground_state(const SectorBasis& basis, const Eigen::MatrixXd& H);

/// build_basis + build_hamiltonian + ground_state.
SectorState solve_sector(int L, int n_up, int n_dn, double U);

/// <n_{j up} n_{j dn}> for every site j.
Eigen::VectorXd site_double_occupancy(const SectorState& state);

/// Site-averaged double occupancy.
double measure_double_occupancy(const SectorState& state);

/// Full 4x4 single-site reduced density matrix of `site` in the local basis
/// |0>, |up>, |dn>, |up dn>, including off-diagonal couplings between basis
/// states that share the environment configuration.
Eigen::Matrix4d one_site_density_matrix(const SectorState& state, int site);

/// Diagonal populations of site 0. Throws DegeneracyError when the ground
/// state is flagged degenerate and std::logic_error if the reduced matrix
/// carries off-diagonal weight above 1e-12.
LocalDensityMatrix measure_local(const SectorState& state);

}  // namespace hubbard::ed
