#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bq {

struct CriterionResult {
  int number = 0;
  std::string title;
  bool passed = false;
  std::string detail;  // failure explanation or pass summary
  double ms = 0.0;
};

// Titles of the nine acceptance checks, in order.
std::vector<std::string> acceptance_titles();

// Runs the acceptance checks against the fixture directory, printing one
// [PASS]/[FAIL] line each plus a summary. `only` restricts to the given
// criterion numbers (empty = all). Returns the per-criterion results.
std::vector<CriterionResult> run_acceptance(const std::string& fixtures_dir, std::ostream& out,
                                            const std::vector<int>& only = {});

}  // namespace bq
