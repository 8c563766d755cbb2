#pragma once

#include <string>
#include <vector>

namespace roboline {

/// One acceptance criterion's outcome.  `detail` is a short diagnostic for
/// failures and a one-line summary for passes.
struct CriterionResult {
  int number = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Runs the full acceptance suite (the same checks `selftest` prints and the
/// acceptance test binary asserts).  Deterministic: fixed seeds, no wall
/// clock inside the criteria.
std::vector<CriterionResult> run_acceptance_suite();

}  // namespace roboline
