#pragma once

#include <stdexcept>
#include <string>

namespace hubbard {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Iterative procedure (quadrature, Newton) failed to meet its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double partial_value, double error_estimate)
      : std::runtime_error(what), partial_value_(partial_value), error_estimate_(error_estimate) {}

  double partial_value() const noexcept { return partial_value_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double partial_value_;
  double error_estimate_;
};

/// Problem size exceeds what the dense machinery supports.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Ground state is degenerate, so single-site populations are not well defined.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hubbard
