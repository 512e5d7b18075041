#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace oswave::selfcheck {

struct CheckResult {
  std::string module;
  std::string name;
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
  double seconds = 0.0;
};

/// Runs every invariant suite. Numerical exceptions count as failures.
std::vector<CheckResult> run_all();

void print_table(std::ostream& os, const std::vector<CheckResult>& results);

}  // namespace oswave::selfcheck
