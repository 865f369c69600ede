#include "hubbard/ed.hpp"

#include <Eigen/Eigenvalues>

#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

#include "hubbard/errors.hpp"

namespace hubbard::ed {

namespace {

constexpr double kDegeneracyTol = 1e-10;

std::vector<std::uint32_t> masks_with_popcount(int L, int count) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (1u << L); ++m) {
    if (std::popcount(m) == count) out.push_back(m);
  }
  return out;
}

// Bits strictly between positions a and b.
std::uint32_t between_mask(int a, int b) {
  const int lo = std::min(a, b);
  const int hi = std::max(a, b);
  return ((1u << hi) - 1u) & ~((1u << (lo + 1)) - 1u);
}

struct Hop {
  std::uint32_t mask;
  double sign;
};

// c+_to c_from on a single-species mask, if allowed.
bool apply_hop(std::uint32_t mask, int to, int from, Hop& out) {
  if (to == from) return false;
  if (!(mask >> from & 1u) || (mask >> to & 1u)) return false;
  out.mask = mask ^ (1u << from) ^ (1u << to);
  out.sign = (std::popcount(mask & between_mask(to, from)) % 2 == 0) ? 1.0 : -1.0;
  return true;
}

}  // namespace

Eigen::Index SectorBasis::index_of(std::uint32_t up, std::uint32_t dn) const {
  if (up >= up_rank_.size() || dn >= dn_rank_.size()) return -1;
  const std::int32_t iu = up_rank_[up];
  const std::int32_t id = dn_rank_[dn];
  if (iu < 0 || id < 0) return -1;
  return static_cast<Eigen::Index>(iu) * dn_count_ + id;
}

SectorBasis build_basis(int L, int n_up, int n_dn) {
  if (L > kMaxSites) throw CapacityError("ed::build_basis: at most " + std::to_string(kMaxSites) + " sites");
  if (L < 2) throw DomainError("ed::build_basis: need at least two sites");
  if (n_up < 0 || n_dn < 0 || n_up > L || n_dn > L) throw DomainError("ed::build_basis: invalid particle numbers");

  SectorBasis basis;
  basis.L = L;
  basis.n_up = n_up;
  basis.n_dn = n_dn;
  const auto ups = masks_with_popcount(L, n_up);
  const auto dns = masks_with_popcount(L, n_dn);
  basis.up_rank_.assign(1u << L, -1);
  basis.dn_rank_.assign(1u << L, -1);
  for (std::size_t i = 0; i < ups.size(); ++i) basis.up_rank_[ups[i]] = static_cast<std::int32_t>(i);
  for (std::size_t i = 0; i < dns.size(); ++i) basis.dn_rank_[dns[i]] = static_cast<std::int32_t>(i);
  basis.dn_count_ = static_cast<std::int32_t>(dns.size());
  basis.states.reserve(ups.size() * dns.size());
  for (auto up : ups) {
    for (auto dn : dns) basis.states.emplace_back(up, dn);
  }
  return basis;
}

Eigen::MatrixXd build_hamiltonian(const SectorBasis& basis, double U) {
  const Eigen::Index dim = basis.size();
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
  const int L = basis.L;
  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto [up, dn] = basis.states[col];
    H(col, col) = U * std::popcount(up & dn);
    for (int j = 0; j < L; ++j) {
      const int k = (j + 1) % L;
      for (const auto& [to, from] : {std::pair{j, k}, std::pair{k, j}}) {
        Hop hop{};
        if (apply_hop(up, to, from, hop)) H(basis.index_of(hop.mask, dn), col) -= hop.sign;
        if (apply_hop(dn, to, from, hop)) H(basis.index_of(up, hop.mask), col) -= hop.sign;
      }
    }
  }
  return H;
}

SectorState ground_state(const SectorBasis& basis, const Eigen::MatrixXd& H) {
  if (H.rows() != basis.size() || H.cols() != basis.size()) {
    throw DomainError("ed::ground_state: matrix does not match basis");
  }
  SectorState state;
  state.basis = basis;
  if (H.rows() == 1) {
    state.energy = H(0, 0);
    state.amplitudes = Eigen::VectorXd::Ones(1);
    return state;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H);
  if (solver.info() != Eigen::Success) throw std::runtime_error("ed::ground_state: eigensolver failed");
  state.energy = solver.eigenvalues()[0];
  state.gap = solver.eigenvalues()[1] - solver.eigenvalues()[0];
  state.degeneracy_flag = state.gap < kDegeneracyTol;
  state.amplitudes = solver.eigenvectors().col(0);
  Eigen::Index pivot = 0;
  state.amplitudes.cwiseAbs().maxCoeff(&pivot);
  if (state.amplitudes[pivot] < 0.0) state.amplitudes = -state.amplitudes;
  state.amplitudes.normalize();
  return state;
}

SectorState solve_sector(int L, int n_up, int n_dn, double U) {
  const SectorBasis basis = build_basis(L, n_up, n_dn);
  return ground_state(basis, build_hamiltonian(basis, U));
}

Eigen::VectorXd site_double_occupancy(const SectorState& state) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(state.basis.L);
  for (Eigen::Index i = 0; i < state.basis.size(); ++i) {
    const auto [up, dn] = state.basis.states[i];
    const double p = state.amplitudes[i] * state.amplitudes[i];
    const std::uint32_t both = up & dn;
    for (int j = 0; j < state.basis.L; ++j) {
      if (both >> j & 1u) out[j] += p;
    }
  }
  return out;
}

double measure_double_occupancy(const SectorState& state) { return site_double_occupancy(state).mean(); }

Eigen::Matrix4d one_site_density_matrix(const SectorState& state, int site) {
  if (site < 0 || site >= state.basis.L) throw DomainError("ed::one_site_density_matrix: site out of range");
  const std::uint32_t bit = 1u << site;
  // Group amplitudes by environment, then form sum_env psi(nu, env) psi(nu', env).
  std::map<std::pair<std::uint32_t, std::uint32_t>, Eigen::Vector4d> by_environment;
  for (Eigen::Index i = 0; i < state.basis.size(); ++i) {
    const auto [up, dn] = state.basis.states[i];
    const int local = ((up & bit) ? 1 : 0) + ((dn & bit) ? 2 : 0);
    auto [it, inserted] = by_environment.try_emplace({up & ~bit, dn & ~bit}, Eigen::Vector4d::Zero());
    it->second[local] += state.amplitudes[i];
  }
  Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
  for (const auto& [env, psi] : by_environment) rho += psi * psi.transpose();
  return rho;
}

LocalDensityMatrix measure_local(const SectorState& state) {
  if (state.degeneracy_flag) throw DegeneracyError("ed::measure_local: ground state is degenerate");
  const Eigen::Matrix4d rho = one_site_density_matrix(state, 0);
  const Eigen::Matrix4d off = rho - Eigen::Matrix4d(rho.diagonal().asDiagonal());
  if (off.cwiseAbs().maxCoeff() > 1e-12) throw std::logic_error("ed::measure_local: reduced matrix is not diagonal");
  // Local index: bit 0 = up, bit 1 = down.
  return {rho(0, 0), rho(1, 1), rho(2, 2), rho(3, 3)};
}

}  // namespace hubbard::ed
