#include "doctest.h"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "hubbard/ed.hpp"
#include "hubbard/errors.hpp"

using namespace hubbard;
using namespace hubbard::ed;

TEST_CASE("sector basis enumeration") {
  CHECK(build_basis(2, 1, 1).size() == 4);
  CHECK(build_basis(4, 2, 2).size() == 36);
  CHECK(build_basis(6, 3, 3).size() == 400);
  CHECK(build_basis(8, 4, 4).size() == 4900);
  CHECK_THROWS_AS(build_basis(9, 1, 1), CapacityError);
  CHECK_THROWS_AS(build_basis(4, 5, 1), DomainError);

  const auto basis = build_basis(5, 2, 3);
  CHECK(std::is_sorted(basis.states.begin(), basis.states.end()));
  std::set<std::pair<std::uint32_t, std::uint32_t>> unique(basis.states.begin(), basis.states.end());
  CHECK(unique.size() == basis.states.size());
  for (Eigen::Index i = 0; i < basis.size(); ++i) {
    const auto [up, dn] = basis.states[i];
    CHECK(std::popcount(up) == 2);
    CHECK(std::popcount(dn) == 3);
    CHECK(basis.index_of(up, dn) == i);
  }
  CHECK(basis.index_of(0b111, 0b111) == -1);
}

TEST_CASE("free-particle spectra") {
  const auto one = build_basis(4, 1, 0);
  Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(build_hamiltonian(one, 0.0)).eigenvalues();
  CHECK(ev[0] == doctest::Approx(-2.0));
  CHECK(std::fabs(ev[1]) < 1e-14);
  CHECK(std::fabs(ev[2]) < 1e-14);
  CHECK(ev[3] == doctest::Approx(2.0));

  CHECK(solve_sector(4, 1, 1, 0.0).energy == doctest::Approx(-4.0).epsilon(1e-13));
  CHECK(solve_sector(6, 3, 3, 0.0).energy == doctest::Approx(-8.0).epsilon(1e-13));
}

TEST_CASE("one-dimensional sector") {
  const auto state = solve_sector(4, 4, 4, 3.0);
  CHECK(state.energy == 12.0);
  CHECK_FALSE(state.degeneracy_flag);
  CHECK(measure_double_occupancy(state) == 1.0);
}

TEST_CASE("degeneracy is flagged honestly") {
  const auto open_shell = solve_sector(4, 2, 2, 0.0);
  CHECK(open_shell.degeneracy_flag);
  CHECK_THROWS_AS(measure_local(open_shell), DegeneracyError);
  CHECK_FALSE(solve_sector(4, 2, 2, 4.0).degeneracy_flag);
  CHECK_FALSE(solve_sector(6, 3, 3, 4.0).degeneracy_flag);
}

TEST_CASE("hamiltonian is exactly symmetric") {
  for (int L : {2, 3, 4, 5, 6}) {
    for (int nu = 0; nu <= L; ++nu) {
      for (int nd = 0; nd <= L; nd += 2) {
        const auto H = build_hamiltonian(build_basis(L, nu, nd), 2.7);
        CHECK(H == H.transpose());
      }
    }
  }
}

TEST_CASE("particle-hole identities hold on even rings") {
  for (int L : {4, 6}) {
    double worst = 0.0;
    for (int nu = 0; nu <= L; ++nu) {
      for (int nd = 0; nd <= L; ++nd) {
        if (nu + nd == 0 || (L == 6 && (nu + nd) % 3 != 0)) continue;
        for (double U : {-4.0, -1.5, 2.0, 5.0}) {
          const int N = nu + nd;
          const double e = solve_sector(L, nu, nd, U).energy;
          const double first = nu * U + solve_sector(L, nu, L - nd, -U).energy;
          const double second = -(L - N) * U + solve_sector(L, L - nu, L - nd, U).energy;
          worst = std::max({worst, std::fabs(e - first), std::fabs(e - second)});
        }
      }
    }
    CAPTURE(L);
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("spin-flipped sectors share their spectrum") {
  for (auto [nu, nd] : {std::pair{1, 3}, std::pair{2, 4}, std::pair{0, 5}}) {
    const auto a = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(build_hamiltonian(build_basis(6, nu, nd), 3.0));
    const auto b = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(build_hamiltonian(build_basis(6, nd, nu), 3.0));
    CHECK((a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("nondegenerate ground states are translation invariant with diagonal local density matrices") {
  for (auto [L, nu, nd, U] : {std::tuple{4, 2, 2, 4.0}, std::tuple{6, 3, 3, 1.0}, std::tuple{6, 3, 3, 8.0},
                              std::tuple{6, 2, 1, 2.0}, std::tuple{6, 3, 3, -2.0}, std::tuple{5, 2, 1, 3.0}}) {
    const auto state = solve_sector(L, nu, nd, U);
    if (state.degeneracy_flag) continue;
    CAPTURE(L);
    CAPTURE(U);
    const Eigen::VectorXd d = site_double_occupancy(state);
    CHECK((d.array() - d.mean()).abs().maxCoeff() <= 1e-10);
    for (int site = 0; site < L; ++site) {
      const Eigen::Matrix4d rho = one_site_density_matrix(state, site);
      const Eigen::Matrix4d off = rho - Eigen::Matrix4d(rho.diagonal().asDiagonal());
      CHECK(off.cwiseAbs().maxCoeff() <= 1e-12);
      CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-12));
    }
    const auto local = measure_local(state);
    CHECK(local.w == doctest::Approx(measure_double_occupancy(state)).epsilon(1e-10));
    CHECK(local.u_plus + local.w == doctest::Approx(double(nu) / L).epsilon(1e-12));
    CHECK(local.u_minus + local.w == doctest::Approx(double(nd) / L).epsilon(1e-12));
  }
}

TEST_CASE("double occupancy limits") {
  CHECK(measure_double_occupancy(solve_sector(4, 2, 2, 1e4)) < 1e-3);
  const auto polarized = solve_sector(6, 3, 0, 2.0);
  CHECK(measure_double_occupancy(polarized) == 0.0);
  const auto local = measure_local(polarized);
  CHECK(local.w == 0.0);
  CHECK(local.u_minus == 0.0);
}

TEST_CASE("free half-filled ring is close to maximally entangled") {
  const auto local = measure_local(solve_sector(6, 3, 3, 0.0));
  const double ev = von_neumann_entropy(local);
  CHECK(ev >= 1.9);
  CHECK(ev <= 2.0);
}
