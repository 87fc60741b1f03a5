#pragma once

// Per-class counts by direct tally, one class at a time.
#include <vector>

namespace oracle {

struct Tally {
  std::vector<double> f1;
  double macro_f1 = 0.0;
  double accuracy = 0.0;
};

inline Tally tally(const std::vector<int>& truth, const std::vector<int>& pred, int classes) {
  Tally out;
  double sum = 0.0;
  for (int c = 0; c < classes; ++c) {
    double tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      if (pred[i] == c && truth[i] == c) tp += 1;
      if (pred[i] == c && truth[i] != c) fp += 1;
      if (pred[i] != c && truth[i] == c) fn += 1;
    }
    const double p = tp + fp > 0 ? tp / (tp + fp) : 0.0;
    const double r = tp + fn > 0 ? tp / (tp + fn) : 0.0;
    const double f = p + r > 0 ? 2 * p * r / (p + r) : 0.0;
    out.f1.push_back(f);
    sum += f;
  }
  out.macro_f1 = sum / classes;
  double hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += truth[i] == pred[i] ? 1 : 0;
  out.accuracy = hits / static_cast<double>(truth.size());
  return out;
}

}  // namespace oracle
