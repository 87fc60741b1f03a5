#include "adi/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include "adi/error.hpp"

namespace adi::metrics {

ConfusionMatrix confusion_matrix(std::span<const int> truth, std::span<const int> predicted, std::size_t class_count) {
  if (truth.size() != predicted.size()) {
    throw Error(ErrorCode::LengthMismatch, "truth has " + std::to_string(truth.size()) + " labels, predictions " +
                                               std::to_string(predicted.size()));
  }
  if (truth.empty()) throw Error(ErrorCode::LengthMismatch, "cannot evaluate zero examples");
  ConfusionMatrix m(class_count, std::vector<std::uint64_t>(class_count, 0));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const int t = truth[i];
    const int p = predicted[i];
    if (t < 0 || p < 0 || static_cast<std::size_t>(t) >= class_count || static_cast<std::size_t>(p) >= class_count) {
      throw Error(ErrorCode::IndexOutOfRange, "label index out of range at position " + std::to_string(i),
                  static_cast<std::int64_t>(i));
    }
    ++m[static_cast<std::size_t>(t)][static_cast<std::size_t>(p)];
  }
  return m;
}

EvalReport evaluate(std::span<const int> truth, std::span<const int> predicted, std::size_t class_count) {
  EvalReport r;
  r.confusion = confusion_matrix(truth, predicted, class_count);
  std::vector<std::uint64_t> row_sum(class_count, 0), col_sum(class_count, 0);
  std::uint64_t trace = 0, total = 0;
  for (std::size_t i = 0; i < class_count; ++i) {
    for (std::size_t j = 0; j < class_count; ++j) {
      row_sum[i] += r.confusion[i][j];
      col_sum[j] += r.confusion[i][j];
      total += r.confusion[i][j];
    }
    trace += r.confusion[i][i];
  }
  double f1_sum = 0.0;
  for (std::size_t c = 0; c < class_count; ++c) {
    const auto tp = static_cast<double>(r.confusion[c][c]);
    ClassScores s;
    bool undefined = false;
    if (col_sum[c] > 0) s.precision = tp / static_cast<double>(col_sum[c]);
    else undefined = true;
    if (row_sum[c] > 0) s.recall = tp / static_cast<double>(row_sum[c]);
    else undefined = true;
    if (s.precision + s.recall > 0.0) s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
    if (undefined) ++r.undefined_classes;
    f1_sum += s.f1;
    r.per_class.push_back(s);
  }
  r.macro_f1 = class_count ? f1_sum / static_cast<double>(class_count) : 0.0;
  r.accuracy = static_cast<double>(trace) / static_cast<double>(total);
  return r;
}

namespace {
std::string name_of(const std::vector<std::string>& names, std::size_t c) {
  return c < names.size() ? names[c] : "class_" + std::to_string(c);
}
}  // namespace

std::string format_report(const EvalReport& report, const std::vector<std::string>& class_names) {
  std::size_t width = 5;
  for (std::size_t c = 0; c < report.per_class.size(); ++c) width = std::max(width, name_of(class_names, c).size());
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << std::left << std::setw(static_cast<int>(width)) << "class" << "  precision     recall         f1    support\n";
  for (std::size_t c = 0; c < report.per_class.size(); ++c) {
    std::uint64_t support = 0;
    for (auto v : report.confusion[c]) support += v;
    const auto& s = report.per_class[c];
    out << std::left << std::setw(static_cast<int>(width)) << name_of(class_names, c) << std::right << "  "
        << std::setw(9) << s.precision << "  " << std::setw(9) << s.recall << "  " << std::setw(9) << s.f1 << "  "
        << std::setw(9) << support << '\n';
  }
  out << '\n'
      << "macro_f1  " << report.macro_f1 << '\n'
      << "accuracy  " << report.accuracy << '\n';
  if (report.undefined_classes) out << "undefined precision/recall (set to 0): " << report.undefined_classes << " classes\n";
  return out.str();
}

std::string format_report_kv(const EvalReport& report, const std::vector<std::string>& class_names) {
  std::ostringstream out;
  out << std::setprecision(17);
  out << "macro_f1=" << report.macro_f1 << '\n';
  out << "accuracy=" << report.accuracy << '\n';
  out << "undefined_classes=" << report.undefined_classes << '\n';
  for (std::size_t c = 0; c < report.per_class.size(); ++c) {
    const auto name = name_of(class_names, c);
    out << "precision." << name << '=' << report.per_class[c].precision << '\n';
    out << "recall." << name << '=' << report.per_class[c].recall << '\n';
    out << "f1." << name << '=' << report.per_class[c].f1 << '\n';
  }
  return out.str();
}

std::string format_confusion_tsv(const ConfusionMatrix& confusion, const std::vector<std::string>& class_names) {
  std::ostringstream out;
  out << "true\\pred";
  for (std::size_t c = 0; c < confusion.size(); ++c) out << '\t' << name_of(class_names, c);
  out << '\n';
  for (std::size_t i = 0; i < confusion.size(); ++i) {
    out << name_of(class_names, i);
    for (auto v : confusion[i]) out << '\t' << v;
    out << '\n';
  }
  return out.str();
}

}  // namespace adi::metrics
