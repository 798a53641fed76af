#pragma once

#include <string>
#include <vector>

namespace rriqa {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Fast built-in invariant checks: tiling catalog, perfect reconstruction,
// density normalization and closed-form vs quadrature L2 distance.
std::vector<CheckResult> run_selfcheck();

}  // namespace rriqa
