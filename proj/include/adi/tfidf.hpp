#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "adi/serialize.hpp"
#include "adi/sparse.hpp"

namespace adi::tfidf {

enum class AnalyzerKind : std::uint8_t { Word = 0, Char = 1, CharWb = 2 };

std::string_view to_string(AnalyzerKind kind);
AnalyzerKind parse_analyzer_kind(std::string_view name);

struct AnalyzerConfig {
  AnalyzerKind kind = AnalyzerKind::Word;
  int ngram_min = 1;
  int ngram_max = 1;
  std::optional<std::size_t> max_features;

  // Throws InvalidArgument unless 1 <= ngram_min <= ngram_max and
  // max_features (when set) is positive.
  void validate() const;
  bool operator==(const AnalyzerConfig&) const = default;
};

// Calls `emit` for every term of `text`, k ascending then position
// ascending (for char_wb: k, then token, then position within the padded
// token). The string_view is only valid during the call.
void for_each_term(std::u32string_view text, const AnalyzerConfig& config,
                   const std::function<void(std::string_view)>& emit);

std::vector<std::string> analyze(std::string_view text, const AnalyzerConfig& config);

// Vocabulary + smoothed idf for one analyzer:
//   idf(t) = ln((1 + N) / (1 + df(t))) + 1
// transform() produces raw counts x idf, L2-normalized.
class TfidfModel {
 public:
  // Throws EmptyCorpus / EmptyVocabulary.
  static TfidfModel fit(std::span<const std::string> texts, const AnalyzerConfig& config);

  SparseVector transform(std::string_view text) const;

  const AnalyzerConfig& config() const { return config_; }
  std::size_t dimension() const { return terms_.size(); }
  std::size_t document_count() const { return document_count_; }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<double>& idf() const { return idf_; }
  std::optional<std::uint32_t> index_of(const std::string& term) const;

  void save(io::BinaryWriter& w) const;
  static TfidfModel load(io::BinaryReader& r);

  bool operator==(const TfidfModel& other) const {
    return config_ == other.config_ && terms_ == other.terms_ && idf_ == other.idf_ &&
           document_count_ == other.document_count_;
  }

 private:
  AnalyzerConfig config_;
  std::vector<std::string> terms_;  // sorted; position = column index
  std::unordered_map<std::string, std::uint32_t> vocabulary_;
  std::vector<double> idf_;
  std::size_t document_count_ = 0;

  void rebuild_index();
};

using Weights = std::array<double, 3>;

// Weighted concatenation of the word, char and char_wb blocks. Each block
// is normalized on its own and then scaled by its weight; the union is not
// re-normalized.
class UnionModel {
 public:
  // configs must be (word, char, char_wb); weights must lie in (0, 1].
  static UnionModel fit(std::span<const std::string> texts, const std::array<AnalyzerConfig, 3>& configs,
                        const Weights& weights);

  SparseVector transform(std::string_view text) const;

  std::size_t dimension() const;
  const std::array<TfidfModel, 3>& blocks() const { return blocks_; }
  const Weights& weights() const { return weights_; }
  std::size_t block_offset(std::size_t block) const;

  void save(io::BinaryWriter& w) const;
  static UnionModel load(io::BinaryReader& r);

  bool operator==(const UnionModel&) const = default;

 private:
  std::array<TfidfModel, 3> blocks_;
  Weights weights_{1.0, 1.0, 1.0};
};

void validate_weights(const Weights& weights);

inline UnionModel fit_union(std::span<const std::string> texts, const std::array<AnalyzerConfig, 3>& configs,
                            const Weights& weights) {
  return UnionModel::fit(texts, configs, weights);
}

}  // namespace adi::tfidf
