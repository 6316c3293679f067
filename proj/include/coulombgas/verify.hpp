#pragma once

#include <string>
#include <vector>

// Built-in verification suite: every check the project treats as its
// acceptance gate, runnable from the CLI (`verify`) and from the dedicated
// acceptance test binary.

namespace coulombgas::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

// Runs all criteria (or a single one when id > 0) and reports one result per
// criterion.  Never throws; failures inside a criterion are reported in-band.
std::vector<CriterionResult> run_acceptance(int only_id = 0);

}  // namespace coulombgas::verify
