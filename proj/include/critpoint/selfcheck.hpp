#pragma once

#include <string>
#include <vector>

namespace critpoint {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Fast internal consistency battery (a few seconds): eigensolver accuracy,
// weight-function band geometry, finite-difference accuracy, movement caps,
// projector perturbation, and determinism of a small end-to-end solve.
std::vector<CheckResult> run_selfcheck();

}  // namespace critpoint
