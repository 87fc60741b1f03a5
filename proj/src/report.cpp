#include "adi/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "adi/error.hpp"

namespace adi::harness {

std::string format_percent(double value) {
  // nearbyint follows the default round-to-nearest-even mode.
  const double hundredths = std::nearbyint(value * 10000.0);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", hundredths / 100.0);
  return buf;
}

namespace {

using Cell = std::optional<double>;

std::string column_name(ExperimentId id) { return "Exp_" + std::to_string(static_cast<int>(id) + 1); }

void render(const std::string& title, const std::vector<ExperimentId>& columns,
            const std::map<int, std::map<ExperimentId, double>>& rows, std::ostringstream& text,
            std::ostringstream& tsv) {
  std::vector<std::vector<std::string>> table;
  std::vector<std::string> header{title};
  for (auto id : columns) header.push_back(column_name(id));
  table.push_back(header);
  for (const auto& [run, cells] : rows) {
    std::vector<std::string> line{"Run " + std::to_string(run + 1)};
    double best = -1.0;
    for (const auto& [id, v] : cells) best = std::max(best, std::nearbyint(v * 10000.0));
    for (auto id : columns) {
      const auto it = cells.find(id);
      if (it == cells.end()) {
        line.push_back("-");
        continue;
      }
      std::string cell = format_percent(it->second);
      if (std::nearbyint(it->second * 10000.0) == best) cell += "*";
      line.push_back(cell);
    }
    table.push_back(line);
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : table)
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  for (const auto& line : table) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c == 0) {
        text << line[c] << std::string(width[c] - line[c].size(), ' ');
      } else {
        text << "  " << std::string(width[c] - line[c].size(), ' ') << line[c];
      }
      tsv << (c ? "\t" : "") << line[c];
    }
    text << '\n';
    tsv << '\n';
  }
}

}  // namespace

Report emit_report(const std::vector<RunResult>& results) {
  if (results.empty()) throw Error(ErrorCode::EmptyResults, "no results to report");
  std::vector<ExperimentId> columns;
  std::map<int, std::map<ExperimentId, double>> dev_rows;
  std::map<int, std::map<ExperimentId, double>> test_rows;
  for (const auto& r : results) {
    if (std::find(columns.begin(), columns.end(), r.spec_id) == columns.end()) columns.push_back(r.spec_id);
    dev_rows[r.run_index][r.spec_id] = r.dev_macro_f1;
    if (r.test_macro_f1) test_rows[r.run_index][r.spec_id] = *r.test_macro_f1;
  }
  std::sort(columns.begin(), columns.end());
  std::ostringstream text, tsv;
  render("dev", columns, dev_rows, text, tsv);
  if (!test_rows.empty()) {
    text << '\n';
    render("test", columns, test_rows, text, tsv);
  }
  return Report{text.str(), tsv.str()};
}

}  // namespace adi::harness
