#pragma once

#include <string>
#include <vector>

namespace coalspec {

struct CheckResult {
  std::string name;
  int n = 0;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  int n_max = 5;
  /// Floating-point tolerance for closed form vs series exponential.
  double tol = 1e-10;
  int lattice_cap = 8;
};

/// Runs every exact identity (and the floating-point transition check) for
/// n = 1..n_max against the reference computations.
std::vector<CheckResult> run_verification(const VerifyOptions& options);

}  // namespace coalspec
