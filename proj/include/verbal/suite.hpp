#pragma once

#include <string>
#include <vector>

namespace verbal {

/// One row of the verification suite.
struct CriterionResult {
  int number = 0;
  std::string name;
  bool pass = false;
  bool skipped = false;
  std::string measured;  // measured values vs. bounds, human readable
  double seconds = 0.0;

  std::string verdict() const { return skipped ? "SKIP" : (pass ? "PASS" : "FAIL"); }
};

/// Runs every criterion of the verification suite. All tolerances are
/// pinned in code; a criterion never defers to runtime configuration.
std::vector<CriterionResult> run_suite();

/// Prints one line per criterion to stdout; returns the number of failures.
int print_suite(const std::vector<CriterionResult>& rows, bool as_json);

}  // namespace verbal
