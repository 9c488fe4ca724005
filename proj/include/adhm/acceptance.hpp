#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace adhm {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool passed = false;
  std::string detail;  ///< deterministic one-line summary (counts, worst values)
};

struct AcceptanceReport {
  std::vector<CriterionResult> criteria;
  bool all_passed = false;
  std::string text;  ///< full deterministic report, one line per criterion
};

/// Runs the whole acceptance suite with deterministically derived per-sample
/// seeds.  The final criterion re-runs the previous ones with the same seed
/// and checks that the rendered report is byte-identical.
AcceptanceReport run_acceptance(std::uint64_t seed);

}  // namespace adhm
