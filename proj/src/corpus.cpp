#include "adi/corpus.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>
#include <unordered_set>

#include "adi/error.hpp"
#include "adi/serialize.hpp"
#include "adi/unicode.hpp"

namespace adi::corpus {

Corpus::Corpus(std::vector<Document> documents) : documents_(std::move(documents)) {
  std::unordered_set<std::string> seen;
  std::set<std::string> labels;
  for (const auto& doc : documents_) {
    if (doc.id.empty()) throw Error(ErrorCode::MalformedRow, "empty document id", 0);
    if (!seen.insert(doc.id).second) throw Error(ErrorCode::DuplicateId, "duplicate id '" + doc.id + "'");
    if (doc.label) labels.insert(*doc.label);
  }
  label_set_.assign(labels.begin(), labels.end());
}

std::optional<std::size_t> Corpus::label_index(const std::string& label) const {
  auto it = std::lower_bound(label_set_.begin(), label_set_.end(), label);
  if (it == label_set_.end() || *it != label) return std::nullopt;
  return static_cast<std::size_t>(it - label_set_.begin());
}

bool Corpus::all_labeled() const {
  return std::all_of(documents_.begin(), documents_.end(), [](const Document& d) { return d.label.has_value(); });
}

Corpus Corpus::map_texts(const std::function<std::string(const std::string&)>& fn) const {
  std::vector<Document> out = documents_;
  for (auto& doc : out) doc.text = fn(doc.text);
  return Corpus(std::move(out));
}

Corpus parse_tsv(const std::string& content, bool has_labels) {
  const std::size_t expected = has_labels ? 3 : 2;
  std::vector<Document> docs;
  std::unordered_set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < content.size()) {
    std::size_t end = content.find('\n', pos);
    if (end == std::string::npos) end = content.size();
    std::string line = content.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    const auto at = static_cast<std::int64_t>(line_no);
    if (!unicode::is_valid_utf8(line)) {
      throw Error(ErrorCode::InvalidEncoding, "line " + std::to_string(line_no) + " is not valid UTF-8", at);
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (fields.size() != expected) {
      throw Error(ErrorCode::MalformedRow,
                  "line " + std::to_string(line_no) + ": expected " + std::to_string(expected) +
                      " fields, found " + std::to_string(fields.size()),
                  at);
    }
    if (fields[0].empty() || fields[1].empty() || (has_labels && fields[2].empty())) {
      throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line_no) + ": empty field", at);
    }
    if (!seen.insert(fields[0]).second) {
      throw Error(ErrorCode::DuplicateId, "duplicate id '" + fields[0] + "' at line " + std::to_string(line_no), at);
    }
    Document doc{fields[0], fields[1], std::nullopt};
    if (has_labels) doc.label = fields[2];
    docs.push_back(std::move(doc));
  }
  return Corpus(std::move(docs));
}

Corpus load_tsv(const std::filesystem::path& path, bool has_labels) {
  return parse_tsv(io::read_file(path), has_labels);
}

std::string format_tsv(const Corpus& corpus) {
  std::string out;
  for (const auto& doc : corpus.documents()) {
    if (doc.text.find_first_of("\t\n") != std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, "document '" + doc.id + "' contains a tab or newline");
    }
    out += doc.id;
    out += '\t';
    out += doc.text;
    if (doc.label) {
      out += '\t';
      out += *doc.label;
    }
    out += '\n';
  }
  return out;
}

void write_tsv(const Corpus& corpus, const std::filesystem::path& path) {
  io::write_file(path, format_tsv(corpus));
}

StatsReport compute_stats(const Corpus& corpus) {
  if (corpus.empty()) throw Error(ErrorCode::EmptyCorpus, "cannot compute statistics of an empty corpus");
  StatsReport s;
  s.min_words_per_sentence = SIZE_MAX;
  s.min_chars_per_sentence = SIZE_MAX;
  for (const auto& doc : corpus.documents()) {
    const std::u32string text = unicode::decode(doc.text);
    const std::size_t words = unicode::split_whitespace(std::u32string_view(text)).size();
    const std::size_t chars = text.size();
    ++s.sentence_count;
    s.word_count += words;
    s.max_words_per_sentence = std::max(s.max_words_per_sentence, words);
    s.min_words_per_sentence = std::min(s.min_words_per_sentence, words);
    s.max_chars_per_sentence = std::max(s.max_chars_per_sentence, chars);
    s.min_chars_per_sentence = std::min(s.min_chars_per_sentence, chars);
  }
  return s;
}

std::string format_stats_table(const std::vector<std::pair<std::string, StatsReport>>& columns) {
  const std::vector<std::pair<std::string, std::size_t StatsReport::*>> rows = {
      {"# sentences", &StatsReport::sentence_count},
      {"# words", &StatsReport::word_count},
      {"Max # word per sentence", &StatsReport::max_words_per_sentence},
      {"Min # word per sentence", &StatsReport::min_words_per_sentence},
      {"Max # char per sentence", &StatsReport::max_chars_per_sentence},
      {"Min # char per sentence", &StatsReport::min_chars_per_sentence},
  };
  std::size_t label_width = 0;
  for (const auto& [name, _] : rows) label_width = std::max(label_width, name.size());
  std::vector<std::size_t> widths;
  for (const auto& [name, stats] : columns) {
    std::size_t w = name.size();
    for (const auto& row : rows) w = std::max(w, std::to_string(stats.*(row.second)).size());
    widths.push_back(w);
  }
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(label_width)) << "";
  for (std::size_t c = 0; c < columns.size(); ++c) {
    out << "  " << std::right << std::setw(static_cast<int>(widths[c])) << columns[c].first;
  }
  out << '\n';
  for (const auto& [name, member] : rows) {
    out << std::left << std::setw(static_cast<int>(label_width)) << name;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << "  " << std::right << std::setw(static_cast<int>(widths[c])) << columns[c].second.*member;
    }
    out << '\n';
  }
  return out.str();
}

std::string format_stats_kv(const StatsReport& s, const std::string& prefix) {
  std::ostringstream out;
  out << prefix << "sentence_count=" << s.sentence_count << '\n'
      << prefix << "word_count=" << s.word_count << '\n'
      << prefix << "max_words_per_sentence=" << s.max_words_per_sentence << '\n'
      << prefix << "min_words_per_sentence=" << s.min_words_per_sentence << '\n'
      << prefix << "max_chars_per_sentence=" << s.max_chars_per_sentence << '\n'
      << prefix << "min_chars_per_sentence=" << s.min_chars_per_sentence << '\n';
  return out.str();
}

LabeledTexts split_labels(const Corpus& corpus) {
  LabeledTexts out;
  out.texts.reserve(corpus.size());
  out.labels.reserve(corpus.size());
  for (const auto& doc : corpus.documents()) {
    if (!doc.label) throw Error(ErrorCode::UnlabeledDocument, "document '" + doc.id + "' has no label");
    out.texts.push_back(doc.text);
    out.labels.push_back(static_cast<int>(*corpus.label_index(*doc.label)));
  }
  return out;
}

std::vector<std::string> texts(const Corpus& corpus) {
  std::vector<std::string> out;
  out.reserve(corpus.size());
  for (const auto& doc : corpus.documents()) out.push_back(doc.text);
  return out;
}

}  // namespace adi::corpus
