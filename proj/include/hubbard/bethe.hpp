#pragma once

#include <Eigen/Core>

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "hubbard/entanglement.hpp"
#include "hubbard/errors.hpp"

namespace hubbard {

/// A ring of L sites holding N electrons, M of them spin down, at coupling U.
struct ModelSector {
  int L = 0;
  int N = 0;
  int M = 0;
  double U = 0.0;

  int n_up() const { return N - M; }
  int n_dn() const { return M; }
  double filling() const { return static_cast<double>(N) / L; }
  double magnetization() const { return static_cast<double>(N - 2 * M) / (2.0 * L); }

  /// 1 <= N <= 2L, 0 <= M <= N, both spin counts <= L, U not NaN.
  void validate() const;
  /// U > 0, N <= L and M <= N - M: the domain the Bethe equations are solved on.
  bool directly_solvable() const;
  std::string describe() const;
};

/// Quantum numbers of the charge (I) and spin (J) Bethe equations.
struct QuantumNumbers {
  Eigen::VectorXd I;
  Eigen::VectorXd J;
};

struct BetheRoots {
  ModelSector sector;
  /// Sector of the highest-weight Bethe state actually solved: same L, N and
  /// U, with M' = lambda.size() <= sector.M down spins. M' < M when the
  /// lowest state of the S_z sector belongs to a larger total spin.
  ModelSector highest_weight;
  QuantumNumbers quantum_numbers;
  Eigen::VectorXd k;
  Eigen::VectorXd lambda;
  double residual_norm = 0.0;
  int iterations = 0;
  /// Set for the U = 0 free-fermion shortcut, where lambda is empty and k
  /// lists both spin Fermi seas (values may repeat).
  bool free_fermion = false;
};

struct SolverOptions {
  double tolerance = 1e-12;
  int max_iterations = 200;
  /// Geometric continuation from U = max(U, 16) when direct Newton fails.
  bool allow_continuation = true;
};

/// Newton or continuation failure; carries the last iterate.
class BetheSolveError : public ConvergenceError {
 public:
  BetheSolveError(const std::string& what, BetheRoots last)
      : ConvergenceError(what, last.residual_norm, last.residual_norm), last_(std::move(last)) {}
  const BetheRoots& last_iterate() const noexcept { return last_; }

 private:
  BetheRoots last_;
};

/// Consecutive quantum numbers centered on zero: I has N entries, integers
/// iff M is even; J has M entries, integers iff N - M is odd. When the
/// count and parity class do not allow a symmetric set, the set is shifted
/// up by 1/2.
QuantumNumbers ground_quantum_numbers(const ModelSector& sector);

/// ground_quantum_numbers plus, when a set cannot be symmetric, the nearby
/// shifted sets (I up by 1/2, J moved by up to one unit) that compete for the
/// ground state. All J stay inside |J| < (N - M + 1) / 2.
std::vector<QuantumNumbers> candidate_quantum_numbers(const ModelSector& sector);

/// True when both I and J are symmetric about zero.
bool symmetric(const QuantumNumbers& qn);

/// Scattering phase 2 atan(4 x / (n U)) for n = 1, 2.
double theta(int n, double x, double U);

/// Residuals of the charge and spin equations, stacked as (F_1..F_N, G_1..G_M):
///   F_j = k_j L - sum_a theta_1(lambda_a - sin k_j) - 2 pi I_j
///   G_a = sum_j theta_1(lambda_a - sin k_j) - sum_b theta_2(lambda_a - lambda_b) - 2 pi J_a
Eigen::VectorXd bethe_residual(const ModelSector& sector, const QuantumNumbers& qn, const Eigen::VectorXd& k,
                               const Eigen::VectorXd& lambda);

/// Roots for one quantum-number configuration of the highest-weight sector
/// `sector`: damped Newton with analytic Jacobian from the decoupled guess
/// k = 2 pi I / L, then continuation in U from max(U, 16) on failure.
BetheRoots solve_configuration(const ModelSector& sector, const QuantumNumbers& qn, const SolverOptions& opts = {});

/// Lowest state of the S_z sector of a directly solvable sector.
///
/// Minimizes over candidate_quantum_numbers, descending M' = M, M - 1, ...
/// until a symmetric configuration exists. A warm start from roots of the
/// same L and N at a nearby coupling reuses their configuration.
/// |U| < 1e-8 returns the free-fermion ground state.
BetheRoots solve_ground_state(const ModelSector& sector, const SolverOptions& opts = {},
                              const BetheRoots* warm_start = nullptr);

/// E = -2 sum_j cos k_j.
double ground_energy(const BetheRoots& roots);

/// Reduction of an arbitrary sector to the directly solvable domain by the
/// down-spin particle-hole map (U < 0), the full particle-hole map (N > L)
/// and a spin flip (M > N - M), applied in that order.
struct SectorMap {
  ModelSector source;
  ModelSector target;
  /// E_source = energy_offset + E_target.
  double energy_offset = 0.0;
  /// Source population i (order z, u+, u-, w) equals target population
  /// population_map[i].
  std::array<int, 4> population_map{0, 1, 2, 3};
  bool down_spin_particle_hole = false;
  bool full_particle_hole = false;
  bool spin_flip = false;

  LocalDensityMatrix pull_back(const LocalDensityMatrix& target_rho) const;
  std::string describe() const;
};

SectorMap map_sector(const ModelSector& sector);

/// Ground energy of any valid sector, routed through map_sector.
double sector_ground_energy(const ModelSector& sector, const SolverOptions& opts = {});

/// Default Hellmann-Feynman step 1e-4 * max(1, |U|).
double default_hf_step(double U);

/// Double occupancy of a directly solvable sector from the central difference
///   w = [E0(U + h) - E0(U - h)] / (2 L h).
/// h <= 0 selects default_hf_step(U). Requires U - h > 0.
double double_occupancy_hf(const ModelSector& sector, double h = 0.0, const SolverOptions& opts = {},
                           const BetheRoots* warm_start = nullptr);

/// Richardson-extrapolated Hellmann-Feynman estimate from steps h and h/2,
/// with |w(h) - w(h/2)| as a truncation estimate.
struct HellmannFeynmanEstimate {
  double coarse = 0.0;
  double fine = 0.0;
  double extrapolated = 0.0;
  double error_estimate = 0.0;
};
HellmannFeynmanEstimate double_occupancy_hf_richardson(const ModelSector& sector, double h = 0.0,
                                                       const SolverOptions& opts = {});

/// Energy and single-site populations of any valid sector from the Bethe
/// solution of its mapped sector. At U = 0 the populations are those of a
/// product of two Fermi seas, w = n_up n_dn.
struct SectorSolution {
  SectorMap map;
  BetheRoots roots;
  double energy = 0.0;
  double double_occupancy = 0.0;
  LocalDensityMatrix rho;
};
SectorSolution solve_sector(const ModelSector& sector, const SolverOptions& opts = {});

/// Charge gap E0(L+1) + E0(L-1) - 2 E0(L) at M = floor(N/2); L even, U > 0.
double charge_gap(int L, double U, const SolverOptions& opts = {});

}  // namespace hubbard
