#pragma once

// Dense brute-force TF-IDF: every count is recomputed from scratch for
// every (document, term) cell.
#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "analyzer_oracle.hpp"

namespace oracle {

struct DenseTfidf {
  std::vector<std::string> terms;
  std::vector<double> idf;
  std::vector<std::vector<double>> rows;  // rows for the transformed texts
};

inline std::size_t count_of(const std::vector<std::string>& grams, const std::string& term) {
  return static_cast<std::size_t>(std::count(grams.begin(), grams.end(), term));
}

inline DenseTfidf brute_force_tfidf(const std::vector<std::string>& train, const std::vector<std::string>& apply,
                                    Kind kind, int m, int n, std::optional<std::size_t> max_features) {
  std::vector<std::vector<std::string>> grams;
  for (const auto& t : train) grams.push_back(analyze(t, kind, m, n));
  std::vector<std::string> all;
  for (const auto& g : grams) all.insert(all.end(), g.begin(), g.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  if (max_features && all.size() > *max_features) {
    std::vector<std::pair<std::size_t, std::string>> ranked;
    for (const auto& term : all) {
      std::size_t total = 0;
      for (const auto& g : grams) total += count_of(g, term);
      ranked.emplace_back(total, term);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    ranked.resize(*max_features);
    all.clear();
    for (const auto& r : ranked) all.push_back(r.second);
    std::sort(all.begin(), all.end());
  }

  DenseTfidf out;
  out.terms = all;
  const double N = static_cast<double>(train.size());
  for (const auto& term : all) {
    std::size_t df = 0;
    for (const auto& g : grams) df += count_of(g, term) > 0 ? 1 : 0;
    out.idf.push_back(std::log((1.0 + N) / (1.0 + static_cast<double>(df))) + 1.0);
  }
  for (const auto& text : apply) {
    const auto g = analyze(text, kind, m, n);
    std::vector<double> row;
    double sq = 0.0;
    for (std::size_t j = 0; j < all.size(); ++j) {
      const double v = static_cast<double>(count_of(g, all[j])) * out.idf[j];
      row.push_back(v);
      sq += v * v;
    }
    if (sq > 0.0) {
      const double norm = std::sqrt(sq);
      for (auto& v : row) v /= norm;
    }
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace oracle
