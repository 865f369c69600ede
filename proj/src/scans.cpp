#include "hubbard/scans.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "hubbard/ed.hpp"
#include "hubbard/entanglement.hpp"
#include "hubbard/errors.hpp"
#include "hubbard/half_filling.hpp"

namespace hubbard {

namespace {

constexpr double kWeakWindow = 1.0;
constexpr double kStrongWindow = 8.0;

// Runs body and converts any exception into a failure status on the record.
template <typename Body>
void guarded(ScanRecord& rec, Body&& body) {
  try {
    body();
  } catch (const DegeneracyError& e) {
    rec.status = status::degenerate;
    rec.detail = e.what();
  } catch (const CapacityError& e) {
    rec.status = status::capacity_error;
    rec.detail = e.what();
  } catch (const DomainError& e) {
    rec.status = status::domain_error;
    rec.detail = e.what();
  } catch (const ConvergenceError& e) {
    rec.status = status::convergence_error;
    rec.detail = e.what();
  } catch (const std::exception& e) {
    rec.status = status::error;
    rec.detail = e.what();
  }
}

void fill_from(ScanRecord& rec, const SectorSolution& sol, int L) {
  rec.energy_per_site = sol.energy / L;
  rec.w = sol.rho.w;
  rec.Ev = von_neumann_entropy(sol.rho);
}

void require_even_ring(int L, const char* where) {
  if (L < 2 || L % 2 != 0) throw DomainError(std::string(where) + ": L must be even and positive");
}

void coupling_point(ScanRecord& rec, int L, double U, const ScanOptions& opts) {
  switch (rec.method) {
    case Method::integral: {
      rec.w = double_occupancy_integral(U, opts.quadrature);
      rec.Ev = von_neumann_entropy(half_filling_density_matrix(rec.w));
      return;
    }
    case Method::bethe: {
      require_even_ring(L, "bethe scan");
      if (!std::isfinite(U)) throw DomainError("bethe scan: U must be finite");
      fill_from(rec, solve_sector(ModelSector{L, L, L / 2, U}, opts.solver), L);
      return;
    }
    case Method::ed: {
      require_even_ring(L, "ed scan");
      if (!std::isfinite(U)) throw DomainError("ed scan: U must be finite");
      const auto state = ed::solve_sector(L, L / 2, L / 2, U);
      rec.energy_per_site = state.energy / L;
      const LocalDensityMatrix rho = ed::measure_local(state);
      rec.w = rho.w;
      rec.Ev = von_neumann_entropy(rho);
      return;
    }
    case Method::series: {
      const double a = std::fabs(U);
      if (a <= kWeakWindow) {
        rec.w = series_double_occupancy(U, SeriesRegime::weak_coupling);
        rec.Ev = series_entanglement(a, SeriesRegime::weak_coupling);
      } else if (std::isfinite(a) && a >= kStrongWindow) {
        const double w = series_double_occupancy(a, SeriesRegime::strong_coupling);
        rec.w = U > 0 ? w : 0.5 - w;
        rec.Ev = series_entanglement(a, SeriesRegime::strong_coupling);
      } else {
        rec.status = status::out_of_window;
      }
      return;
    }
    case Method::analytic:
      throw DomainError("scan_coupling: no analytic method for a coupling scan");
  }
}

unsigned worker_count(unsigned requested, std::size_t n) {
  unsigned t = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(n, 1)));
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::integral:
      return "integral";
    case Method::bethe:
      return "bethe";
    case Method::ed:
      return "ed";
    case Method::series:
      return "series";
    case Method::analytic:
      return "analytic";
  }
  return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::integral, Method::bethe, Method::ed, Method::series, Method::analytic}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = worker_count(threads, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<ScanRecord> scan_coupling(int L, const std::vector<double>& U_grid, const std::vector<Method>& methods,
                                      const ScanOptions& opts) {
  std::vector<ScanRecord> out(U_grid.size() * methods.size());
  parallel_for(out.size(), opts.threads, [&](std::size_t i) {
    ScanRecord& rec = out[i];
    const double U = U_grid[i / methods.size()];
    rec.parameter = U;
    rec.method = methods[i % methods.size()];
    guarded(rec, [&] { coupling_point(rec, L, U, opts); });
  });
  return out;
}

std::vector<int> singlet_filling_grid(int L) {
  std::vector<int> grid;
  for (int N = 2; N <= 2 * L - 2; N += 2) grid.push_back(N);
  return grid;
}

std::vector<int> magnetization_grid(int L, int N) {
  std::vector<int> grid;
  for (int M = std::max(0, N - L); M <= N / 2; ++M) grid.push_back(M);
  return grid;
}

std::vector<ScanRecord> scan_filling(int L, double U, const std::vector<int>& N_grid, const ScanOptions& opts) {
  require_even_ring(L, "scan_filling");
  if (std::isnan(U) || U == -INFINITY) throw DomainError("scan_filling: U must be a number or +inf");
  for (int N : N_grid) {
    if (N <= 0 || N > 2 * L || N % 2 != 0) {
      throw DomainError("scan_filling: N must be even in (0, 2L], got " + std::to_string(N));
    }
  }
  const auto base_of = [L](int N) { return std::min(N, 2 * L - N); };

  std::vector<ScanRecord> out(N_grid.size());
  if (std::isinf(U)) {
    for (std::size_t i = 0; i < N_grid.size(); ++i) {
      const int N = N_grid[i];
      ScanRecord& rec = out[i];
      rec.parameter = static_cast<double>(N) / L;
      rec.method = Method::analytic;
      rec.w = N > L ? static_cast<double>(N - L) / L : 0.0;
      rec.Ev = infinite_u_filling_curve(static_cast<double>(base_of(N)) / L);
    }
    return out;
  }

  std::vector<int> bases;
  for (int N : N_grid) bases.push_back(base_of(N));
  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
  std::vector<ScanRecord> base_records(bases.size());
  std::vector<SectorSolution> solutions(bases.size());
  parallel_for(bases.size(), opts.threads, [&](std::size_t i) {
    ScanRecord& rec = base_records[i];
    rec.method = Method::bethe;
    guarded(rec, [&] {
      // N' = 0 (mirror of the full lattice) is the empty state.
      if (bases[i] > 0) solutions[i] = solve_sector(ModelSector{L, bases[i], bases[i] / 2, U}, opts.solver);
      fill_from(rec, solutions[i], L);
    });
  });

  for (std::size_t i = 0; i < N_grid.size(); ++i) {
    const int N = N_grid[i];
    const std::size_t b = std::lower_bound(bases.begin(), bases.end(), base_of(N)) - bases.begin();
    ScanRecord& rec = out[i];
    rec = base_records[b];
    rec.parameter = static_cast<double>(N) / L;
    if (N <= L || rec.failed()) continue;
    guarded(rec, [&] {
      const SectorMap map = map_sector(ModelSector{L, N, N / 2, U});
      rec.energy_per_site = (map.energy_offset + solutions[b].energy) / L;
      rec.w = map.pull_back(solutions[b].rho).w;
    });
  }
  return out;
}

std::vector<ScanRecord> scan_magnetization(int L, int N, double U, const std::vector<int>& M_grid,
                                           const ScanOptions& opts) {
  if (L < 1) throw DomainError("scan_magnetization: L must be positive");
  if (N < 1 || N > 2 * L) throw DomainError("scan_magnetization: N outside [1, 2L]");
  if (std::isnan(U) || U == -INFINITY) throw DomainError("scan_magnetization: U must be a number or +inf");
  std::vector<int> grid = M_grid;
  for (int M : grid) {
    if (M < std::max(0, N - L) || M > N / 2) {
      throw DomainError("scan_magnetization: M outside [max(0, N - L), N/2], got " + std::to_string(M));
    }
  }
  // Increasing m_z is decreasing M.
  std::sort(grid.begin(), grid.end(), std::greater<>());

  std::vector<ScanRecord> out(grid.size());
  parallel_for(grid.size(), opts.threads, [&](std::size_t i) {
    const int M = grid[i];
    ScanRecord& rec = out[i];
    rec.parameter = (N - 2.0 * M) / (2.0 * L);
    if (std::isinf(U)) {
      rec.method = Method::analytic;
      guarded(rec, [&] {
        const LocalDensityMatrix rho =
            populations(std::max(0.0, static_cast<double>(N - L) / L), static_cast<double>(N - M) / L,
                        static_cast<double>(M) / L);
        rec.w = rho.w;
        rec.Ev = von_neumann_entropy(rho);
      });
      return;
    }
    rec.method = Method::bethe;
    guarded(rec, [&] { fill_from(rec, solve_sector(ModelSector{L, N, M, U}, opts.solver), L); });
  });
  return out;
}

DerivativeJump derivative_jump_at_half_filling(int L, double U, const ScanOptions& opts) {
  require_even_ring(L, "derivative_jump_at_half_filling");
  if (L < 6) throw DomainError("derivative_jump_at_half_filling: need L >= 6");
  if (!(U >= 0.0) || !std::isfinite(U)) throw DomainError("derivative_jump_at_half_filling: need finite U >= 0");
  const auto ev = [&](int N) { return von_neumann_entropy(solve_sector(ModelSector{L, N, N / 2, U}, opts.solver).rho); };
  const double e0 = ev(L);
  const double e2 = ev(L - 2);
  const double e4 = ev(L - 4);
  const double two_step = 2.0 * (2.0 / L);
  DerivativeJump jump;
  jump.left = (3.0 * e0 - 4.0 * e2 + e4) / two_step;
  // Mirror: E_v at L + 2 and L + 4 equal e2 and e4.
  jump.right = (-3.0 * e0 + 4.0 * e2 - e4) / two_step;
  if (U > 0.0) jump.charge_gap = charge_gap(L, U, opts.solver);
  return jump;
}

}  // namespace hubbard
