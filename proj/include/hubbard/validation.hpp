#pragma once

#include <string>
#include <vector>

namespace hubbard {

enum class ValidationSuite { quick, full };

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Oracle-equivalence and invariant checks.
///
/// quick: anchors at U = 0, evenness, Bethe vs exact diagonalization on
/// L = 4, 6, Hellmann-Feynman vs ED, the negative-U map.
/// full: adds the L = 70 ring against the thermodynamic integral and the
/// series windows.
std::vector<CheckResult> run_validation(ValidationSuite suite);

}  // namespace hubbard
