#include "adi/tfidf.hpp"

#include <algorithm>
#include <cmath>

#include "adi/error.hpp"
#include "adi/unicode.hpp"

namespace adi {

SparseVector SparseVector::from_dense(std::span<const double> dense) {
  SparseVector v;
  v.dimension = dense.size();
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0.0) v.entries.emplace_back(static_cast<std::uint32_t>(i), dense[i]);
  }
  return v;
}

DenseVector SparseVector::to_dense() const {
  DenseVector d(dimension, 0.0);
  for (const auto& [i, x] : entries) d[i] = x;
  return d;
}

double SparseVector::dot(std::span<const double> dense) const {
  double s = 0.0;
  for (const auto& [i, x] : entries) s += x * dense[i];
  return s;
}

double SparseVector::squared_norm() const {
  double s = 0.0;
  for (const auto& e : entries) s += e.second * e.second;
  return s;
}

bool SparseVector::well_formed() const {
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& [i, x] = entries[k];
    if (i >= dimension || !std::isfinite(x) || x == 0.0) return false;
    if (k > 0 && entries[k - 1].first >= i) return false;
  }
  return true;
}

}  // namespace adi

namespace adi::tfidf {

std::string_view to_string(AnalyzerKind kind) {
  switch (kind) {
    case AnalyzerKind::Word: return "word";
    case AnalyzerKind::Char: return "char";
    case AnalyzerKind::CharWb: return "char_wb";
  }
  return "word";
}

AnalyzerKind parse_analyzer_kind(std::string_view name) {
  for (auto k : {AnalyzerKind::Word, AnalyzerKind::Char, AnalyzerKind::CharWb}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::InvalidValue, "unknown analyzer '" + std::string(name) + "'");
}

void AnalyzerConfig::validate() const {
  if (ngram_min < 1 || ngram_max < ngram_min) {
    throw Error(ErrorCode::InvalidArgument, "invalid ngram range (" + std::to_string(ngram_min) + ", " +
                                                std::to_string(ngram_max) + ")");
  }
  if (max_features && *max_features == 0) throw Error(ErrorCode::InvalidArgument, "max_features must be positive");
}

namespace {

void emit_window(std::string& buf, std::u32string_view s, const std::function<void(std::string_view)>& emit) {
  buf.clear();
  for (char32_t c : s) unicode::append_utf8(buf, c);
  emit(buf);
}

}  // namespace

void for_each_term(std::u32string_view text, const AnalyzerConfig& config,
                   const std::function<void(std::string_view)>& emit) {
  const auto m = static_cast<std::size_t>(config.ngram_min);
  const auto n = static_cast<std::size_t>(config.ngram_max);
  std::string buf;
  switch (config.kind) {
    case AnalyzerKind::Word: {
      const auto tokens = unicode::split_whitespace(text);
      for (std::size_t k = m; k <= n; ++k) {
        for (std::size_t i = 0; i + k <= tokens.size(); ++i) {
          buf.clear();
          for (std::size_t j = i; j < i + k; ++j) {
            if (j > i) buf.push_back(' ');
            for (char32_t c : tokens[j]) unicode::append_utf8(buf, c);
          }
          emit(buf);
        }
      }
      break;
    }
    case AnalyzerKind::Char: {
      for (std::size_t k = m; k <= n; ++k) {
        for (std::size_t i = 0; i + k <= text.size(); ++i) emit_window(buf, text.substr(i, k), emit);
      }
      break;
    }
    case AnalyzerKind::CharWb: {
      std::vector<std::u32string> padded;
      for (auto tok : unicode::split_whitespace(text)) {
        std::u32string p;
        p.reserve(tok.size() + 2);
        p.push_back(U' ');
        p.append(tok);
        p.push_back(U' ');
        padded.push_back(std::move(p));
      }
      for (std::size_t k = m; k <= n; ++k) {
        for (const auto& p : padded) {
          const std::u32string_view pv(p);
          if (pv.size() < k) {
            emit_window(buf, pv, emit);
            continue;
          }
          for (std::size_t i = 0; i + k <= pv.size(); ++i) emit_window(buf, pv.substr(i, k), emit);
        }
      }
      break;
    }
  }
}

std::vector<std::string> analyze(std::string_view text, const AnalyzerConfig& config) {
  config.validate();
  const std::u32string scalars = unicode::decode(text);
  std::vector<std::string> out;
  for_each_term(scalars, config, [&](std::string_view t) { out.emplace_back(t); });
  return out;
}

void TfidfModel::rebuild_index() {
  vocabulary_.clear();
  vocabulary_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) vocabulary_.emplace(terms_[i], static_cast<std::uint32_t>(i));
}

TfidfModel TfidfModel::fit(std::span<const std::string> texts, const AnalyzerConfig& config) {
  config.validate();
  if (texts.empty()) throw Error(ErrorCode::EmptyCorpus, "cannot fit TF-IDF on zero documents");

  struct TermStats {
    std::uint64_t tf = 0;
    std::uint64_t df = 0;
    std::size_t last_doc = SIZE_MAX;
  };
  std::unordered_map<std::string, TermStats> stats;
  std::string key;
  for (std::size_t d = 0; d < texts.size(); ++d) {
    const std::u32string scalars = unicode::decode(texts[d]);
    for_each_term(scalars, config, [&](std::string_view t) {
      key.assign(t);
      auto it = stats.find(key);
      if (it == stats.end()) it = stats.emplace(key, TermStats{}).first;
      auto& s = it->second;
      ++s.tf;
      if (s.last_doc != d) {
        ++s.df;
        s.last_doc = d;
      }
    });
  }
  if (stats.empty()) throw Error(ErrorCode::EmptyVocabulary, "no term survived analysis");

  std::vector<std::pair<std::string, TermStats>> kept(stats.begin(), stats.end());
  if (config.max_features && kept.size() > *config.max_features) {
    const auto limit = static_cast<std::ptrdiff_t>(*config.max_features);
    std::nth_element(kept.begin(), kept.begin() + limit, kept.end(), [](const auto& a, const auto& b) {
      return a.second.tf != b.second.tf ? a.second.tf > b.second.tf : a.first < b.first;
    });
    kept.resize(static_cast<std::size_t>(limit));
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

  TfidfModel model;
  model.config_ = config;
  model.document_count_ = texts.size();
  const double n_docs = static_cast<double>(texts.size());
  model.terms_.reserve(kept.size());
  model.idf_.reserve(kept.size());
  for (auto& [term, s] : kept) {
    model.terms_.push_back(std::move(term));
    model.idf_.push_back(std::log((1.0 + n_docs) / (1.0 + static_cast<double>(s.df))) + 1.0);
  }
  model.rebuild_index();
  return model;
}

std::optional<std::uint32_t> TfidfModel::index_of(const std::string& term) const {
  auto it = vocabulary_.find(term);
  if (it == vocabulary_.end()) return std::nullopt;
  return it->second;
}

SparseVector TfidfModel::transform(std::string_view text) const {
  SparseVector out;
  out.dimension = terms_.size();
  const std::u32string scalars = unicode::decode(text);
  std::vector<std::uint32_t> hits;
  std::string key;
  for_each_term(scalars, config_, [&](std::string_view t) {
    key.assign(t);
    auto it = vocabulary_.find(key);
    if (it != vocabulary_.end()) hits.push_back(it->second);
  });
  if (hits.empty()) return out;
  std::sort(hits.begin(), hits.end());
  double norm2 = 0.0;
  for (std::size_t i = 0; i < hits.size();) {
    std::size_t j = i;
    while (j < hits.size() && hits[j] == hits[i]) ++j;
    const double value = static_cast<double>(j - i) * idf_[hits[i]];
    out.entries.emplace_back(hits[i], value);
    norm2 += value * value;
    i = j;
  }
  const double norm = std::sqrt(norm2);
  for (auto& e : out.entries) e.second /= norm;
  return out;
}

void TfidfModel::save(io::BinaryWriter& w) const {
  w.u8(static_cast<std::uint8_t>(config_.kind));
  w.u32(static_cast<std::uint32_t>(config_.ngram_min));
  w.u32(static_cast<std::uint32_t>(config_.ngram_max));
  w.u64(config_.max_features.value_or(0));
  w.u64(document_count_);
  w.u64(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    w.str(terms_[i]);
    w.u64(i);
  }
  w.f64_array(idf_);
}

TfidfModel TfidfModel::load(io::BinaryReader& r) {
  TfidfModel m;
  const std::size_t kind_at = r.offset();
  const std::uint8_t kind = r.u8();
  if (kind > 2) throw Error(ErrorCode::CorruptFile, "invalid analyzer kind", static_cast<std::int64_t>(kind_at));
  m.config_.kind = static_cast<AnalyzerKind>(kind);
  m.config_.ngram_min = static_cast<int>(r.u32());
  m.config_.ngram_max = static_cast<int>(r.u32());
  if (const std::uint64_t mf = r.u64(); mf != 0) m.config_.max_features = mf;
  m.document_count_ = r.u64();
  const std::uint64_t n = r.count(16);
  m.terms_.resize(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    std::string term = r.str();
    const std::size_t at = r.offset();
    const std::uint64_t index = r.u64();
    if (index != i) throw Error(ErrorCode::CorruptFile, "vocabulary index out of order", static_cast<std::int64_t>(at));
    m.terms_[i] = std::move(term);
  }
  const std::size_t idf_at = r.offset();
  m.idf_ = r.f64_array();
  if (m.idf_.size() != n) throw Error(ErrorCode::CorruptFile, "idf length mismatch", static_cast<std::int64_t>(idf_at));
  m.rebuild_index();
  return m;
}

void validate_weights(const Weights& weights) {
  for (double w : weights) {
    if (!(w > 0.0 && w <= 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "union weights must lie in (0, 1], got " + std::to_string(w));
    }
  }
}

UnionModel UnionModel::fit(std::span<const std::string> texts, const std::array<AnalyzerConfig, 3>& configs,
                           const Weights& weights) {
  validate_weights(weights);
  const AnalyzerKind order[3] = {AnalyzerKind::Word, AnalyzerKind::Char, AnalyzerKind::CharWb};
  for (std::size_t b = 0; b < 3; ++b) {
    if (configs[b].kind != order[b]) {
      throw Error(ErrorCode::InvalidArgument, "union blocks must be (word, char, char_wb)");
    }
  }
  UnionModel u;
  for (std::size_t b = 0; b < 3; ++b) u.blocks_[b] = TfidfModel::fit(texts, configs[b]);
  u.weights_ = weights;
  return u;
}

std::size_t UnionModel::dimension() const {
  std::size_t d = 0;
  for (const auto& b : blocks_) d += b.dimension();
  return d;
}

std::size_t UnionModel::block_offset(std::size_t block) const {
  std::size_t off = 0;
  for (std::size_t b = 0; b < block; ++b) off += blocks_[b].dimension();
  return off;
}

SparseVector UnionModel::transform(std::string_view text) const {
  SparseVector out;
  out.dimension = dimension();
  std::size_t offset = 0;
  for (std::size_t b = 0; b < 3; ++b) {
    const SparseVector block = blocks_[b].transform(text);
    for (const auto& [i, x] : block.entries) {
      out.entries.emplace_back(static_cast<std::uint32_t>(offset + i), x * weights_[b]);
    }
    offset += blocks_[b].dimension();
  }
  return out;
}

void UnionModel::save(io::BinaryWriter& w) const {
  for (const auto& b : blocks_) b.save(w);
  for (double x : weights_) w.f64(x);
}

UnionModel UnionModel::load(io::BinaryReader& r) {
  UnionModel u;
  for (auto& b : u.blocks_) b = TfidfModel::load(r);
  for (auto& x : u.weights_) x = r.f64();
  return u;
}

}  // namespace adi::tfidf
