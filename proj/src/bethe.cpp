#include "hubbard/bethe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "hubbard/newton.hpp"

namespace hubbard {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFreeCoupling = 1e-8;
constexpr double kContinuationAnchor = 16.0;
constexpr int kMaxContinuationSteps = 400;


// n consecutive values centered on 0, moved by `offset`.
Eigen::VectorXd centered_sequence(int n, double offset) {
  Eigen::VectorXd out(n);
  const double first = -(n - 1) / 2.0;
  for (int i = 0; i < n; ++i) out[i] = first + i + offset;
  return out;
}

// Smallest offset >= 0 putting n centered values in the requested class.
double class_offset(int n, bool integers) { return ((n % 2 == 1) == integers) ? 0.0 : 0.5; }

bool is_symmetric(const Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v[i] != -v[v.size() - 1 - i]) return false;
  }
  return true;
}

// theta_n'(x) = 2 (4 / (n U)) / (1 + (4 x / (n U))^2)
double theta_prime(int n, double x, double U) {
  const double a = 4.0 / (n * U);
  const double t = a * x;
  return 2.0 * a / (1.0 + t * t);
}

struct BetheSystem {
  const ModelSector& sector;
  const QuantumNumbers& qn;

  void operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f, Eigen::MatrixXd* jac) const {
    const int N = sector.N;
    const int M = sector.M;
    const double U = sector.U;
    const auto k = x.head(N);
    const auto lambda = x.tail(M);
    const Eigen::ArrayXd s = k.array().sin();
    const Eigen::ArrayXd c = k.array().cos();
    f.resize(N + M);
    for (int j = 0; j < N; ++j) {
      double phase = 0.0;
      for (int a = 0; a < M; ++a) phase += theta(1, lambda[a] - s[j], U);
      f[j] = k[j] * sector.L - phase - kTwoPi * qn.I[j];
    }
    for (int a = 0; a < M; ++a) {
      double charge = 0.0;
      for (int j = 0; j < N; ++j) charge += theta(1, lambda[a] - s[j], U);
      double spin = 0.0;
      for (int b = 0; b < M; ++b) {
        if (b != a) spin += theta(2, lambda[a] - lambda[b], U);
      }
      f[N + a] = charge - spin - kTwoPi * qn.J[a];
    }
    if (jac == nullptr) return;
    Eigen::MatrixXd& J = *jac;
    J.setZero(N + M, N + M);
    for (int j = 0; j < N; ++j) {
      J(j, j) = sector.L;
      for (int a = 0; a < M; ++a) {
        const double t1 = theta_prime(1, lambda[a] - s[j], U);
        J(j, j) += t1 * c[j];
        J(j, N + a) = -t1;
        J(N + a, j) = -t1 * c[j];
        J(N + a, N + a) += t1;
      }
    }
    for (int a = 0; a < M; ++a) {
      for (int b = 0; b < M; ++b) {
        if (b == a) continue;
        const double t2 = theta_prime(2, lambda[a] - lambda[b], U);
        J(N + a, N + a) -= t2;
        J(N + a, N + b) = t2;
      }
    }
  }
};

BetheRoots free_fermion_roots(const ModelSector& sector, const QuantumNumbers& qn) {
  BetheRoots roots;
  roots.sector = sector;
  roots.quantum_numbers = qn;
  roots.highest_weight = sector;
  roots.free_fermion = true;
  std::vector<double> k;
  for (int count : {sector.n_up(), sector.n_dn()}) {
    // Fermi sea of `count` spinless fermions, momenta 2 pi m / L.
    const Eigen::VectorXd m = centered_sequence(count, class_offset(count, true));
    for (double v : m) k.push_back(kTwoPi * v / sector.L);
  }
  std::sort(k.begin(), k.end());
  roots.k = Eigen::Map<Eigen::VectorXd>(k.data(), static_cast<Eigen::Index>(k.size()));
  roots.lambda.resize(0);
  return roots;
}

Eigen::VectorXd initial_guess(const ModelSector& sector, const QuantumNumbers& qn) {
  Eigen::VectorXd x(sector.N + sector.M);
  x.head(sector.N) = kTwoPi * qn.I / sector.L;
  for (int a = 0; a < sector.M; ++a) {
    x[sector.N + a] = std::tan(std::numbers::pi * qn.J[a] / (sector.N - sector.M + 1)) * (sector.U / 4.0 + 1.0);
  }
  return x;
}

BetheRoots pack(const ModelSector& sector, const QuantumNumbers& qn, const NewtonResult<double>& r) {
  BetheRoots roots;
  roots.sector = sector;
  roots.quantum_numbers = qn;
  roots.k = r.x.head(sector.N);
  roots.lambda = r.x.tail(sector.M);
  roots.residual_norm = r.residual_norm;
  roots.iterations = r.iterations;
  return roots;
}

bool strictly_increasing(const Eigen::VectorXd& v) {
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) return false;
  }
  return true;
}

bool acceptable(const ModelSector& sector, const NewtonResult<double>& r) {
  if (r.status != NewtonStatus::converged) return false;
  const Eigen::VectorXd k = r.x.head(sector.N);
  const Eigen::VectorXd lambda = r.x.tail(sector.M);
  if (!strictly_increasing(k) || !strictly_increasing(lambda)) return false;
  // Allow pi itself up to round-off, which occurs at half filling.
  return (k.array() > -std::numbers::pi).all() && (k.array() <= std::numbers::pi + 1e-12).all();
}

NewtonResult<double> newton_at(const ModelSector& sector, const QuantumNumbers& qn, Eigen::VectorXd x0,
                               const SolverOptions& opts) {
  NewtonOptions<double> nopts;
  nopts.tolerance = opts.tolerance;
  nopts.max_iterations = opts.max_iterations;
  return damped_newton<double>(BetheSystem{sector, qn}, std::move(x0), nopts);
}

std::string status_text(NewtonStatus s) {
  switch (s) {
    case NewtonStatus::converged:
      return "converged";
    case NewtonStatus::max_iterations:
      return "iteration cap reached";
    case NewtonStatus::stalled:
      return "line search stalled";
    case NewtonStatus::singular_jacobian:
      return "Jacobian singular to working precision; try continuation in U";
  }
  return "unknown";
}

void validate_counts(const ModelSector& s, bool allow_empty) {
  if (s.L < 1) throw DomainError("ModelSector: L must be positive");
  if (s.N < (allow_empty ? 0 : 1) || s.N > 2 * s.L) throw DomainError("ModelSector: N outside [1, 2L]");
  if (s.M < 0 || s.M > s.N) throw DomainError("ModelSector: M outside [0, N]");
  if (s.N - s.M > s.L || s.M > s.L) throw DomainError("ModelSector: more than L electrons of one spin");
  if (std::isnan(s.U)) throw DomainError("ModelSector: U is NaN");
}

}  // namespace

void ModelSector::validate() const { validate_counts(*this, false); }

bool ModelSector::directly_solvable() const { return U > 0.0 && N <= L && M <= N - M; }

std::string ModelSector::describe() const {
  std::ostringstream os;
  os << "(L=" << L << ", N=" << N << ", M=" << M << ", U=" << U << ")";
  return os.str();
}

QuantumNumbers ground_quantum_numbers(const ModelSector& sector) {
  validate_counts(sector, true);
  QuantumNumbers qn;
  qn.I = centered_sequence(sector.N, class_offset(sector.N, sector.M % 2 == 0));
  // When both sets are shifted, opposite directions keep the total momentum small.
  qn.J = centered_sequence(sector.M, -class_offset(sector.M, (sector.N - sector.M) % 2 == 1));
  return qn;
}

bool symmetric(const QuantumNumbers& qn) { return is_symmetric(qn.I) && is_symmetric(qn.J); }

std::vector<QuantumNumbers> candidate_quantum_numbers(const ModelSector& sector) {
  const QuantumNumbers base = ground_quantum_numbers(sector);
  std::vector<QuantumNumbers> out{base};
  if (symmetric(base)) return out;
  const double j_bound = (sector.N - sector.M + 1) / 2.0;
  const double j_class = class_offset(sector.M, (sector.N - sector.M) % 2 == 1);
  // With I symmetric, negative J offsets are mirror images of positive ones.
  const double lowest = is_symmetric(base.I) ? 0.0 : -1.0;
  for (double d = lowest; d <= 1.0; d += 0.5) {
    if (std::fmod(std::fabs(d - j_class), 1.0) != 0.0) continue;
    QuantumNumbers qn{base.I, centered_sequence(sector.M, d)};
    if (sector.M > 0 && std::max(-qn.J[0], qn.J[sector.M - 1]) >= j_bound) continue;
    if (qn.J == base.J) continue;
    out.push_back(std::move(qn));
  }
  return out;
}

double theta(int n, double x, double U) { return 2.0 * std::atan(4.0 * x / (n * U)); }

Eigen::VectorXd bethe_residual(const ModelSector& sector, const QuantumNumbers& qn, const Eigen::VectorXd& k,
                               const Eigen::VectorXd& lambda) {
  Eigen::VectorXd x(k.size() + lambda.size());
  x << k, lambda;
  Eigen::VectorXd f;
  BetheSystem{sector, qn}(x, f, nullptr);
  return f;
}

BetheRoots solve_configuration(const ModelSector& sector, const QuantumNumbers& qn, const SolverOptions& opts) {
  if (qn.I.size() != sector.N || qn.J.size() != sector.M) {
    throw DomainError("solve_configuration: quantum numbers do not match " + sector.describe());
  }
  if (!(sector.U > 0.0)) throw DomainError("solve_configuration: need U > 0 at " + sector.describe());
  auto direct = newton_at(sector, qn, initial_guess(sector, qn), opts);
  if (acceptable(sector, direct)) return pack(sector, qn, direct);
  if (!opts.allow_continuation) {
    throw BetheSolveError("solve_ground_state: " + status_text(direct.status) + " at " + sector.describe(),
                          pack(sector, qn, direct));
  }

  // Continuation from a strongly coupled anchor where the equations decouple.
  ModelSector step = sector;
  step.U = sector.U < kContinuationAnchor ? kContinuationAnchor : 4.0 * sector.U;
  auto current = newton_at(step, qn, initial_guess(step, qn), opts);
  if (!acceptable(step, current)) {
    throw BetheSolveError("solve_ground_state: continuation anchor failed (" + status_text(current.status) +
                              ") at " + step.describe(),
                          pack(step, qn, current));
  }
  double ratio = 0.7;
  int steps = 0;
  while (step.U != sector.U) {
    if (++steps > kMaxContinuationSteps) {
      throw BetheSolveError("solve_ground_state: continuation step budget exhausted at " + step.describe(),
                            pack(step, qn, current));
    }
    ModelSector next = step;
    next.U = step.U * ratio;
    if (next.U <= sector.U) next.U = sector.U;
    const auto trial = newton_at(next, qn, current.x, opts);
    if (acceptable(next, trial)) {
      step = next;
      current = trial;
      ratio = std::max(0.25, ratio * ratio);
    } else {
      ratio = std::sqrt(ratio);
      if (ratio > 0.999) {
        throw BetheSolveError("solve_ground_state: continuation stalled (" + status_text(trial.status) + ") at " +
                                  next.describe(),
                              pack(next, qn, trial));
      }
    }
  }
  BetheRoots roots = pack(sector, qn, current);
  roots.iterations += steps;
  return roots;
}

BetheRoots solve_ground_state(const ModelSector& sector, const SolverOptions& opts, const BetheRoots* warm_start) {
  validate_counts(sector, true);
  if (!(sector.N <= sector.L && sector.M <= sector.N - sector.M && sector.U >= 0.0)) {
    throw DomainError("solve_ground_state: sector " + sector.describe() + " needs map_sector first");
  }
  if (sector.U < kFreeCoupling) return free_fermion_roots(sector, ground_quantum_numbers(sector));

  const auto finish = [&sector](BetheRoots roots) {
    roots.highest_weight = roots.sector;
    roots.highest_weight.U = sector.U;
    roots.sector = sector;
    return roots;
  };

  if (warm_start != nullptr && !warm_start->free_fermion && warm_start->sector.L == sector.L &&
      warm_start->sector.N == sector.N && warm_start->highest_weight.M <= sector.M) {
    ModelSector hw = sector;
    hw.M = warm_start->highest_weight.M;
    Eigen::VectorXd x0(sector.N + hw.M);
    x0 << warm_start->k, warm_start->lambda;
    const auto r = newton_at(hw, warm_start->quantum_numbers, x0, opts);
    if (acceptable(hw, r)) return finish(pack(hw, warm_start->quantum_numbers, r));
  }

  std::optional<BetheRoots> best;
  double best_energy = 0.0;
  std::optional<BetheSolveError> last_error;
  for (int m = sector.M; m >= 0; --m) {
    ModelSector hw = sector;
    hw.M = m;
    for (const QuantumNumbers& qn : candidate_quantum_numbers(hw)) {
      try {
        BetheRoots roots = solve_configuration(hw, qn, opts);
        const double e = ground_energy(roots);
        if (!best || e < best_energy) {
          best_energy = e;
          best = std::move(roots);
        }
      } catch (const BetheSolveError& err) {
        if (!last_error) last_error = err;
      }
    }
    if (symmetric(ground_quantum_numbers(hw))) break;
  }
  if (!best) throw *last_error;
  return finish(std::move(*best));
}

double ground_energy(const BetheRoots& roots) { return -2.0 * roots.k.array().cos().sum(); }

LocalDensityMatrix SectorMap::pull_back(const LocalDensityMatrix& target_rho) const {
  const Eigen::Vector4d t = target_rho.diagonal();
  return {t[population_map[0]], t[population_map[1]], t[population_map[2]], t[population_map[3]]};
}

std::string SectorMap::describe() const {
  std::ostringstream os;
  os << source.describe() << " -> " << target.describe() << " offset " << energy_offset;
  if (down_spin_particle_hole) os << " [down-spin particle-hole]";
  if (full_particle_hole) os << " [particle-hole]";
  if (spin_flip) os << " [spin flip]";
  return os.str();
}

SectorMap map_sector(const ModelSector& sector) {
  sector.validate();
  SectorMap map;
  map.source = sector;
  int up = sector.n_up();
  int dn = sector.n_dn();
  double U = sector.U;
  const int L = sector.L;
  // compose: source[i] = current[p[i]], current[i] = next[t[i]]
  const auto compose = [&map](const std::array<int, 4>& t) {
    for (int& p : map.population_map) p = t[p];
  };
  if (U < 0.0) {
    if (L % 2 != 0) throw DomainError("map_sector: particle-hole maps need an even ring, got " + sector.describe());
    map.energy_offset += up * U;
    dn = L - dn;
    U = -U;
    map.down_spin_particle_hole = true;
    compose({2, 3, 0, 1});
  }
  if (up + dn > L) {
    if (L % 2 != 0) throw DomainError("map_sector: particle-hole maps need an even ring, got " + sector.describe());
    map.energy_offset += -(L - (up + dn)) * U;
    up = L - up;
    dn = L - dn;
    map.full_particle_hole = true;
    compose({3, 2, 1, 0});
  }
  if (dn > up) {
    std::swap(up, dn);
    map.spin_flip = true;
    compose({0, 2, 1, 3});
  }
  map.target = ModelSector{L, up + dn, dn, U};
  return map;
}

double sector_ground_energy(const ModelSector& sector, const SolverOptions& opts) {
  const SectorMap map = map_sector(sector);
  if (map.target.N == 0) return map.energy_offset;
  return map.energy_offset + ground_energy(solve_ground_state(map.target, opts));
}

double default_hf_step(double U) { return 1e-4 * std::max(1.0, std::fabs(U)); }

double double_occupancy_hf(const ModelSector& sector, double h, const SolverOptions& opts,
                           const BetheRoots* warm_start) {
  if (h <= 0.0) h = default_hf_step(sector.U);
  if (!(sector.U - h > 0.0)) throw DomainError("double_occupancy_hf: need U - h > 0 at " + sector.describe());
  if (sector.M == 0 || sector.N == 0) return 0.0;
  BetheRoots center;
  if (warm_start == nullptr) {
    center = solve_ground_state(sector, opts);
    warm_start = &center;
  }
  ModelSector plus = sector;
  ModelSector minus = sector;
  plus.U += h;
  minus.U -= h;
  const double e_plus = ground_energy(solve_ground_state(plus, opts, warm_start));
  const double e_minus = ground_energy(solve_ground_state(minus, opts, warm_start));
  return (e_plus - e_minus) / (2.0 * sector.L * h);
}

HellmannFeynmanEstimate double_occupancy_hf_richardson(const ModelSector& sector, double h,
                                                       const SolverOptions& opts) {
  if (h <= 0.0) h = default_hf_step(sector.U);
  const BetheRoots center = solve_ground_state(sector, opts);
  HellmannFeynmanEstimate out;
  out.coarse = double_occupancy_hf(sector, h, opts, &center);
  out.fine = double_occupancy_hf(sector, 0.5 * h, opts, &center);
  out.extrapolated = (4.0 * out.fine - out.coarse) / 3.0;
  out.error_estimate = std::fabs(out.fine - out.coarse);
  return out;
}

SectorSolution solve_sector(const ModelSector& sector, const SolverOptions& opts) {
  SectorSolution sol;
  sol.map = map_sector(sector);
  const ModelSector& target = sol.map.target;
  const double L = target.L;
  double w_target = 0.0;
  double e_target = 0.0;
  if (target.N > 0) {
    sol.roots = solve_ground_state(target, opts);
    e_target = ground_energy(sol.roots);
    if (sol.roots.free_fermion) {
      w_target = (target.n_up() / L) * (target.n_dn() / L);
    } else {
      double h = default_hf_step(target.U);
      if (h >= target.U) h = 0.5 * target.U;
      w_target = double_occupancy_hf(target, h, opts, &sol.roots);
    }
  }
  sol.energy = sol.map.energy_offset + e_target;
  sol.rho = sol.map.pull_back(populations(w_target, target.n_up() / L, target.n_dn() / L));
  sol.double_occupancy = sol.rho.w;
  return sol;
}

double charge_gap(int L, double U, const SolverOptions& opts) {
  if (L < 2 || L % 2 != 0) throw DomainError("charge_gap: L must be even");
  if (!(U > 0.0)) throw DomainError("charge_gap: U must be positive");
  const auto energy = [&](int N) { return sector_ground_energy(ModelSector{L, N, N / 2, U}, opts); };
  return energy(L + 1) + energy(L - 1) - 2.0 * energy(L);
}

}  // namespace hubbard
