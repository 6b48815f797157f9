#pragma once

// Named invariant checks, one or more per module, runnable from the CLI.

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace prequant {

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured deviation
  double tolerance = 0.0;  // pass when value <= tolerance
  std::string detail;
};

struct Check {
  std::string name;
  std::string description;
  std::function<CheckResult()> run;
};

const std::vector<Check>& check_registry();

/// Runs every check whose name contains `filter` (all when empty).
std::vector<CheckResult> run_checks(std::string_view filter = {});

}  // namespace prequant
