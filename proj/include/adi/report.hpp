#pragma once

#include <string>
#include <vector>

#include "adi/experiment.hpp"

namespace adi::harness {

// value * 100 rounded half-to-even to 2 decimals, e.g. 0.625139 -> "62.51".
std::string format_percent(double value);

struct Report {
  std::string text;
  std::string tsv;
};

// Rows "Run i", columns Exp_1..Exp_4 restricted to the experiments present;
// cells are dev macro-F1 percentages, the best cell of each row is marked
// with '*', missing cells are "-". When any result has a test score a
// second table of test scores follows. Throws EmptyResults.
Report emit_report(const std::vector<RunResult>& results);

}  // namespace adi::harness
