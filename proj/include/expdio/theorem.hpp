#pragma once

#include <string>
#include <vector>

#include "expdio/linforms.hpp"
#include "expdio/search.hpp"

namespace expdio {

/// One case of the proof together with the evidence gathered for it.
struct CaseEntry {
  std::string label;  // "n=2", "(i)", "(iv) x=1", ...
  std::string title;
  bool certified = false;
  std::string detail;
  std::vector<Certificate> certificates;

  bool operator==(const CaseEntry&) const = default;
};

struct TheoremOptions {
  bool smoke = false;
  unsigned workers = 1;
  unsigned precision_digits = kDefaultPrecisionDigits;
  std::string checkpoint_path;     // x=1 search cursor
  double time_budget_seconds = 0;  // x=1 search only; <= 0: unlimited
};

struct TheoremReport {
  bool smoke = false;
  bool complete = true;
  unsigned precision_digits = 0;
  std::string tool_version = kToolVersion;
  std::vector<Solution> solutions;
  std::vector<CaseEntry> cases;
  BoundResult bounds;
  std::vector<std::string> diff;  // empty iff everything matched

  bool matches_expected() const { return complete && diff.empty(); }
};

/// (n, x, y, z) = (3, 1, 2, 3) and (3, 2, 1, 2), sorted.
std::vector<Solution> expected_solutions();

/// Runs every search, certificate and bound check and compares the outcome
/// with the expected solution set. Smoke mode shrinks the x=1 search to
/// n <= 511 and the per-n congruence sweeps to n <= 300.
TheoremReport verify_theorem(const TheoremOptions& opts = {});

}  // namespace expdio
