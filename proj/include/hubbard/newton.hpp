#pragma once

#include <Eigen/Core>
#include <Eigen/LU>

#include <cmath>

namespace hubbard {

template <typename Scalar>
struct NewtonOptions {
  Scalar tolerance = Scalar(1e-12);  ///< on the residual infinity norm
  int max_iterations = 200;
  int max_halvings = 40;
  Scalar singular_rcond = Scalar(1e-15);
};

enum class NewtonStatus { converged, max_iterations, stalled, singular_jacobian };

template <typename Scalar>
struct NewtonResult {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
  Scalar residual_norm = Scalar(0);
  int iterations = 0;
  NewtonStatus status = NewtonStatus::max_iterations;
};

/// Damped Newton iteration for F(x) = 0.
///
/// `system(x, f, jac)` fills the residual f and, when `jac` is non-null, the
/// Jacobian. Each step is halved until the residual infinity norm decreases.
/// A step that cannot reduce the residual ends the iteration as `stalled`.
template <typename Scalar, typename System>
NewtonResult<Scalar> damped_newton(System&& system, Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x,
                                   const NewtonOptions<Scalar>& opts = {}) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index n = x.size();
  NewtonResult<Scalar> result;
  Vector f(n);
  Matrix jac(n, n);
  system(x, f, &jac);
  Scalar norm = n == 0 ? Scalar(0) : f.template lpNorm<Eigen::Infinity>();
  int iter = 0;
  for (; iter < opts.max_iterations && norm > opts.tolerance; ++iter) {
    Eigen::PartialPivLU<Matrix> lu(jac);
    if (!(lu.rcond() > opts.singular_rcond)) {
      result.status = NewtonStatus::singular_jacobian;
      result.x = x;
      result.residual_norm = norm;
      result.iterations = iter;
      return result;
    }
    const Vector step = lu.solve(f);
    Scalar scale(1);
    Vector trial(n);
    Vector f_trial(n);
    Scalar trial_norm(0);
    bool accepted = false;
    for (int h = 0; h <= opts.max_halvings; ++h, scale /= Scalar(2)) {
      trial = x - scale * step;
      system(trial, f_trial, nullptr);
      trial_norm = f_trial.template lpNorm<Eigen::Infinity>();
      if (std::isfinite(static_cast<double>(trial_norm)) && trial_norm < norm) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      result.status = NewtonStatus::stalled;
      result.x = x;
      result.residual_norm = norm;
      result.iterations = iter;
      return result;
    }
    x = trial;
    system(x, f, &jac);
    norm = f.template lpNorm<Eigen::Infinity>();
  }
  result.x = x;
  result.residual_norm = norm;
  result.iterations = iter;
  result.status = norm <= opts.tolerance ? NewtonStatus::converged : NewtonStatus::max_iterations;
  return result;
}

}  // namespace hubbard
