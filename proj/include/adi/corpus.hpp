#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace adi::corpus {

struct Document {
  std::string id;
  std::string text;  // UTF-8
  std::optional<std::string> label;

  bool operator==(const Document&) const = default;
};

// Ordered, immutable collection of documents. The label set is the sorted
// set of distinct labels; a label's position in it is the label index used
// by every downstream model.
class Corpus {
 public:
  Corpus() = default;
  // Throws DuplicateId on repeated ids, MalformedRow(0) on empty ids.
  explicit Corpus(std::vector<Document> documents);

  const std::vector<Document>& documents() const { return documents_; }
  const std::vector<std::string>& label_set() const { return label_set_; }
  std::size_t size() const { return documents_.size(); }
  bool empty() const { return documents_.empty(); }

  std::optional<std::size_t> label_index(const std::string& label) const;
  bool all_labeled() const;

  // Same ids and labels, texts rewritten by `fn`. Texts may become empty.
  Corpus map_texts(const std::function<std::string(const std::string&)>& fn) const;

 private:
  std::vector<Document> documents_;
  std::vector<std::string> label_set_;
};

Corpus load_tsv(const std::filesystem::path& path, bool has_labels);
// Parses TSV content already in memory; line numbers in errors are 1-based.
Corpus parse_tsv(const std::string& content, bool has_labels);
std::string format_tsv(const Corpus& corpus);
void write_tsv(const Corpus& corpus, const std::filesystem::path& path);

struct StatsReport {
  std::size_t sentence_count = 0;
  std::size_t word_count = 0;
  std::size_t max_words_per_sentence = 0;
  std::size_t min_words_per_sentence = 0;
  std::size_t max_chars_per_sentence = 0;
  std::size_t min_chars_per_sentence = 0;

  bool operator==(const StatsReport&) const = default;
};

// Words are maximal non-whitespace runs, chars are Unicode scalars.
StatsReport compute_stats(const Corpus& corpus);

std::string format_stats_table(const std::vector<std::pair<std::string, StatsReport>>& columns);
std::string format_stats_kv(const StatsReport& stats, const std::string& prefix = "");

struct LabeledTexts {
  std::vector<std::string> texts;
  std::vector<int> labels;
};

// Throws UnlabeledDocument(id) if any document lacks a label.
LabeledTexts split_labels(const Corpus& corpus);

std::vector<std::string> texts(const Corpus& corpus);

}  // namespace adi::corpus
