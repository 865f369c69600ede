#include "hubbard/validation.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>

#include "hubbard/bethe.hpp"
#include "hubbard/ed.hpp"
#include "hubbard/half_filling.hpp"
#include "hubbard/output.hpp"

namespace hubbard {

namespace {

// Runs a check returning its worst deviation; passes when it is <= tol.
void check(std::vector<CheckResult>& out, std::string name, double tol, const std::function<double()>& deviation) {
  CheckResult r;
  r.name = std::move(name);
  try {
    const double d = deviation();
    r.passed = d <= tol;
    r.detail = "deviation " + format_number(d, 3) + " (tol " + format_number(tol, 3) + ")";
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  out.push_back(std::move(r));
}

double energy_gap_to_ed(const ModelSector& s) {
  const auto state = ed::solve_sector(s.L, s.n_up(), s.n_dn(), s.U);
  return std::fabs(sector_ground_energy(s) - state.energy);
}

}  // namespace

std::vector<CheckResult> run_validation(ValidationSuite suite) {
  std::vector<CheckResult> out;

  check(out, "w(0) = 1/4", 1e-8, [] { return std::fabs(double_occupancy_integral(0.0) - 0.25); });
  check(out, "E_v(0) = 2", 1e-8, [] { return std::fabs(local_entanglement_half_filling(0.0) - 2.0); });
  check(out, "E_v(U) = E_v(-U)", 1e-10, [] {
    double worst = 0.0;
    for (double U : {0.5, 1.0, 2.0, 4.0, 8.0}) {
      worst = std::max(worst, std::fabs(local_entanglement_half_filling(U) - local_entanglement_half_filling(-U)));
    }
    return worst;
  });

  for (const ModelSector s : {ModelSector{4, 2, 1, 1.0}, ModelSector{4, 2, 1, 4.0}, ModelSector{4, 4, 2, 1.0},
                              ModelSector{4, 4, 2, 4.0}, ModelSector{6, 6, 3, 1.0}, ModelSector{6, 6, 3, 4.0},
                              ModelSector{6, 4, 2, 4.0}, ModelSector{6, 5, 2, 2.0}, ModelSector{4, 6, 3, 2.0},
                              ModelSector{4, 4, 2, -4.0}}) {
    check(out, "energy vs ED " + s.describe(), 1e-8, [s] { return energy_gap_to_ed(s); });
  }
  check(out, "Hellmann-Feynman w vs ED (L=6, N=6, M=3, U=4)", 1e-5, [] {
    const auto state = ed::solve_sector(6, 3, 3, 4.0);
    return std::fabs(double_occupancy_hf({6, 6, 3, 4.0}) - ed::measure_double_occupancy(state));
  });

  if (suite == ValidationSuite::quick) return out;

  for (double U : {1.0, 2.0, 4.0, 8.0, -1.0, -2.0, -4.0, -8.0}) {
    check(out, "L=70 Bethe w vs integral, U=" + format_number(U, 3), 5e-3, [U] {
      return std::fabs(solve_sector({70, 70, 35, U}).double_occupancy - double_occupancy_integral(U));
    });
    check(out, "L=70 Bethe E_v vs integral, U=" + format_number(U, 3), 1e-2, [U] {
      return std::fabs(von_neumann_entropy(solve_sector({70, 70, 35, U}).rho) - local_entanglement_half_filling(U));
    });
  }
  check(out, "strong series window U=20", 1e-6, [] {
    return std::fabs(double_occupancy_integral(20.0) - series_double_occupancy(20.0, SeriesRegime::strong_coupling));
  });
  check(out, "strong series window U=40", 1e-8, [] {
    return std::fabs(double_occupancy_integral(40.0) - series_double_occupancy(40.0, SeriesRegime::strong_coupling));
  });
  check(out, "weak series window U<=0.5", 1e-4, [] {
    double worst = 0.0;
    for (double U : {0.1, 0.25, 0.5}) {
      worst = std::max(worst, std::fabs(double_occupancy_integral(U) -
                                        series_double_occupancy(U, SeriesRegime::weak_coupling)));
    }
    return worst;
  });
  return out;
}

}  // namespace hubbard
