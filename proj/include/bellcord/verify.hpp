#pragma once

#include <functional>
#include <string>
#include <vector>

namespace bellcord {

// Seed used by the sampling checks.  Frozen so the whole battery is
// reproducible run to run; the determinism check additionally shows the
// counts do not depend on the worker layout.
inline constexpr unsigned long long kAcceptanceSeed = 20260822ull;

struct CriterionResult {
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  // Measured margins on success; the first violated sub-check on
  // failure.  Purely informative either way.
  std::string detail;
};

// Canonical names of the twelve acceptance checks, in run order:
// exact combinatorics first, then numeric limits, then sampling.
const std::vector<std::string>& acceptance_criterion_names();

// Run the named checks (empty selection = all twelve, canonical order).
// threads steers the sampling checks; progress, when set, fires after
// each completed check.  Unknown names are rejected.  A check that
// throws internally is reported as failed, not propagated.
std::vector<CriterionResult> run_acceptance(
    const std::vector<std::string>& names = {}, unsigned threads = 1,
    const std::function<void(const CriterionResult&)>& progress = {});

}  // namespace bellcord
