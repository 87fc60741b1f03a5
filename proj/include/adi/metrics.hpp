#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace adi::metrics {

// rows = true class, columns = predicted class
using ConfusionMatrix = std::vector<std::vector<std::uint64_t>>;

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EvalReport {
  ConfusionMatrix confusion;
  std::vector<ClassScores> per_class;
  double macro_f1 = 0.0;
  double accuracy = 0.0;
  // Classes where precision or recall was 0/0 and set to 0.
  std::size_t undefined_classes = 0;
};

// Throws LengthMismatch (including empty input) and IndexOutOfRange.
ConfusionMatrix confusion_matrix(std::span<const int> truth, std::span<const int> predicted, std::size_t class_count);

// Macro-F1 averages over all class_count classes, including classes that
// never occur; undefined ratios count as 0.
EvalReport evaluate(std::span<const int> truth, std::span<const int> predicted, std::size_t class_count);

std::string format_report(const EvalReport& report, const std::vector<std::string>& class_names);
std::string format_report_kv(const EvalReport& report, const std::vector<std::string>& class_names);
// TSV with a header row of predicted class names and a leading column of
// true class names.
std::string format_confusion_tsv(const ConfusionMatrix& confusion, const std::vector<std::string>& class_names);

}  // namespace adi::metrics
