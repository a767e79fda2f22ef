#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stsense {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the acceptance criteria (all 11 when `ids` is empty), printing one
/// PASS/FAIL line per criterion to `log` when given. Monte-Carlo criteria use
/// fixed seeds, so two runs produce identical results.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {},
                                            std::ostream* log = nullptr, int threads = 0);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace stsense
