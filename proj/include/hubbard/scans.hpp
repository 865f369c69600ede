#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hubbard/bethe.hpp"
#include "hubbard/special_functions.hpp"

namespace hubbard {

/// `analytic` marks the closed-form infinite-coupling curves.
enum class Method { integral, bethe, ed, series, analytic };

std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view name);

namespace status {
inline constexpr std::string_view ok = "ok";
/// Series requested outside its validity window; not a failure.
inline constexpr std::string_view out_of_window = "out_of_window";
inline constexpr std::string_view degenerate = "degenerate";
inline constexpr std::string_view domain_error = "domain_error";
inline constexpr std::string_view capacity_error = "capacity_error";
inline constexpr std::string_view convergence_error = "convergence_error";
inline constexpr std::string_view error = "error";
}  // namespace status

/// One grid point of a scan. Unavailable quantities are NaN.
struct ScanRecord {
  double parameter = 0.0;
  double energy_per_site = NAN;
  double w = NAN;
  double Ev = NAN;
  Method method = Method::integral;
  std::string status{status::ok};
  /// Exception text for failed points; not serialized.
  std::string detail;

  bool failed() const { return status != status::ok && status != status::out_of_window; }
};

struct ScanOptions {
  QuadratureSpec quadrature;
  SolverOptions solver;
  /// Worker threads; 0 uses std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Runs fn(i) for i in [0, n) on a bounded pool. Each index is handled by
/// exactly one worker, so results written per index are order independent.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

/// Half filling, zero magnetization (N = L, M = L/2). One record per grid
/// point per method, grid-major. Failed points carry an error status.
std::vector<ScanRecord> scan_coupling(int L, const std::vector<double>& U_grid, const std::vector<Method>& methods,
                                      const ScanOptions& opts = {});

/// Singlet sectors (N even, M = N/2) at filling n = N/L, in grid order.
/// Points with N > L reuse the N' = 2L - N solution, so E_v(n) = E_v(2 - n)
/// holds bit for bit. U = +inf gives the analytic curve.
std::vector<ScanRecord> scan_filling(int L, double U, const std::vector<int>& N_grid, const ScanOptions& opts = {});

/// Sectors (L, N, M) for M in M_grid, parameter m_z = (N - 2M) / (2L),
/// sorted by increasing m_z. U = +inf uses w = max(0, n - 1).
std::vector<ScanRecord> scan_magnetization(int L, int N, double U, const std::vector<int>& M_grid,
                                           const ScanOptions& opts = {});

/// Even N from 2 to 2L - 2.
std::vector<int> singlet_filling_grid(int L);
/// M from max(0, N - L) to N/2.
std::vector<int> magnetization_grid(int L, int N);

struct DerivativeJump {
  double left = 0.0;
  double right = 0.0;
  /// Charge gap of the same ring; NaN at U = 0.
  double charge_gap = NAN;
};

/// One-sided second-order slopes of E_v(n) at n = 1 from N = L, L-2, L-4,
/// with the right slope built from the mirrored values. L even, L >= 6, U >= 0.
DerivativeJump derivative_jump_at_half_filling(int L, double U, const ScanOptions& opts = {});

}  // namespace hubbard
