#include "adi/pipeline.hpp"

#include "adi/error.hpp"
#include "adi/serialize.hpp"

namespace adi::pipeline {

std::string_view to_string(FeatureSource source) {
  switch (source) {
    case FeatureSource::TfidfUnion: return "tfidf_union";
    case FeatureSource::FastTextSupervised: return "fasttext_supervised";
    case FeatureSource::FastTextUnsupervised: return "fasttext_unsupervised";
  }
  return "tfidf_union";
}

FeatureSource parse_feature_source(std::string_view name) {
  for (auto s : {FeatureSource::TfidfUnion, FeatureSource::FastTextSupervised, FeatureSource::FastTextUnsupervised}) {
    if (to_string(s) == name) return s;
  }
  throw Error(ErrorCode::InvalidValue, "unknown feature source '" + std::string(name) + "'");
}

LanguageResources LanguageResources::bundled() { return {surface::Stoplist::bundled(), morph::Lexicon::bundled()}; }

std::string preprocess(std::string_view text, const surface::SurfaceConfig& surface, const morph::MorphConfig& morph,
                       const LanguageResources& resources) {
  std::string out = surface::apply_surface(text, surface, resources.stoplist);
  return morph::apply_morph(out, morph, resources.lexicon);
}

Pipeline Pipeline::fit(const PipelineConfig& config, const corpus::Corpus& train, const LanguageResources& resources,
                       unsigned workers, const fasttext::ProgressFn& progress) {
  auto labeled = corpus::split_labels(train);
  for (auto& t : labeled.texts) t = pipeline::preprocess(t, config.surface, config.morph, resources);
  return fit_preprocessed(config, labeled.texts, labeled.labels, train.label_set(), resources, workers, progress);
}

Pipeline Pipeline::fit_preprocessed(const PipelineConfig& config, std::span<const std::string> texts,
                                    std::span<const int> labels, std::vector<std::string> class_names,
                                    const LanguageResources& resources, unsigned workers,
                                    const fasttext::ProgressFn& progress) {
  if (texts.size() != labels.size()) throw Error(ErrorCode::LengthMismatch, "pipeline: texts and labels differ in length");
  if (class_names.size() < 2) throw Error(ErrorCode::SingleClass, "pipeline: need at least two classes");
  Pipeline p;
  p.config_ = config;
  p.resources_ = resources;
  p.class_names_ = std::move(class_names);

  std::vector<SparseVector> features;
  features.reserve(texts.size());
  switch (config.source) {
    case FeatureSource::TfidfUnion: {
      auto model = tfidf::UnionModel::fit(texts, config.analyzers, config.weights);
      for (const auto& t : texts) features.push_back(model.transform(t));
      p.features_ = std::move(model);
      break;
    }
    case FeatureSource::FastTextSupervised: {
      auto model = fasttext::train_supervised(texts, labels, config.fasttext, progress);
      for (const auto& t : texts) features.push_back(SparseVector::from_dense(model.sentence_vector(t)));
      p.features_ = std::move(model);
      break;
    }
    case FeatureSource::FastTextUnsupervised: {
      auto model = fasttext::train_skipgram(texts, config.fasttext, progress);
      for (const auto& t : texts) features.push_back(SparseVector::from_dense(model.sentence_vector(t)));
      p.features_ = std::move(model);
      break;
    }
  }
  p.svc_ = svc::train_ovr(features, labels, p.class_names_.size(), config.svc, workers);
  return p;
}

std::string Pipeline::preprocess(std::string_view text) const {
  return pipeline::preprocess(text, config_.surface, config_.morph, resources_);
}

SparseVector Pipeline::features_preprocessed(std::string_view text) const {
  return std::visit(
      [&](const auto& model) -> SparseVector {
        using M = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<M, tfidf::UnionModel>) {
          return model.transform(text);
        } else {
          return SparseVector::from_dense(model.sentence_vector(text));
        }
      },
      features_);
}

int Pipeline::predict_preprocessed(std::string_view text) const { return svc_.predict(features_preprocessed(text)); }

int Pipeline::predict(std::string_view text) const { return predict_preprocessed(preprocess(text)); }

std::string Pipeline::predict_label(std::string_view text) const {
  return class_names_[static_cast<std::size_t>(predict(text))];
}

namespace {

void write_analyzer(io::BinaryWriter& w, const tfidf::AnalyzerConfig& a) {
  w.u8(static_cast<std::uint8_t>(a.kind));
  w.u32(static_cast<std::uint32_t>(a.ngram_min));
  w.u32(static_cast<std::uint32_t>(a.ngram_max));
  w.u64(a.max_features.value_or(0));
}

tfidf::AnalyzerConfig read_analyzer(io::BinaryReader& r) {
  tfidf::AnalyzerConfig a;
  const std::size_t at = r.offset();
  const std::uint8_t kind = r.u8();
  if (kind > 2) throw Error(ErrorCode::CorruptFile, "invalid analyzer kind", static_cast<std::int64_t>(at));
  a.kind = static_cast<tfidf::AnalyzerKind>(kind);
  a.ngram_min = static_cast<int>(r.u32());
  a.ngram_max = static_cast<int>(r.u32());
  if (const auto mf = r.u64(); mf) a.max_features = mf;
  return a;
}

void write_config(io::BinaryWriter& w, const PipelineConfig& c) {
  const auto& s = c.surface;
  for (bool b : {s.normalize_letters, s.remove_punct_emoji, s.remove_stopwords, s.remove_diacritics, s.remove_non_arabic}) {
    w.boolean(b);
  }
  w.u8(static_cast<std::uint8_t>(c.morph.mode));
  w.u8(static_cast<std::uint8_t>(c.source));
  for (const auto& a : c.analyzers) write_analyzer(w, a);
  for (double x : c.weights) w.f64(x);
  const auto& f = c.fasttext;
  w.i64(f.dim);
  w.i64(f.window);
  w.i64(f.epochs);
  w.i64(f.min_count);
  w.i64(f.subword_min);
  w.i64(f.subword_max);
  w.u32(f.bucket_count);
  w.i64(f.negatives);
  w.f64(f.learning_rate);
  w.u64(f.seed);
  w.f64(c.svc.C);
  w.f64(c.svc.tolerance);
  w.i64(c.svc.max_sweeps);
  w.u64(c.svc.seed);
}

PipelineConfig read_config(io::BinaryReader& r) {
  PipelineConfig c;
  auto& s = c.surface;
  s.normalize_letters = r.boolean();
  s.remove_punct_emoji = r.boolean();
  s.remove_stopwords = r.boolean();
  s.remove_diacritics = r.boolean();
  s.remove_non_arabic = r.boolean();
  std::size_t at = r.offset();
  const std::uint8_t mode = r.u8();
  if (mode > 3) throw Error(ErrorCode::CorruptFile, "invalid morph mode", static_cast<std::int64_t>(at));
  c.morph.mode = static_cast<morph::MorphMode>(mode);
  at = r.offset();
  const std::uint8_t source = r.u8();
  if (source > 2) throw Error(ErrorCode::CorruptFile, "invalid feature source", static_cast<std::int64_t>(at));
  c.source = static_cast<FeatureSource>(source);
  for (auto& a : c.analyzers) a = read_analyzer(r);
  for (auto& x : c.weights) x = r.f64();
  auto& f = c.fasttext;
  f.dim = static_cast<int>(r.i64());
  f.window = static_cast<int>(r.i64());
  f.epochs = static_cast<int>(r.i64());
  f.min_count = static_cast<int>(r.i64());
  f.subword_min = static_cast<int>(r.i64());
  f.subword_max = static_cast<int>(r.i64());
  f.bucket_count = r.u32();
  f.negatives = static_cast<int>(r.i64());
  f.learning_rate = r.f64();
  f.seed = r.u64();
  c.svc.C = r.f64();
  c.svc.tolerance = r.f64();
  c.svc.max_sweeps = static_cast<int>(r.i64());
  c.svc.seed = r.u64();
  return c;
}

void write_strings(io::BinaryWriter& w, const std::vector<std::string>& v) {
  w.u64(v.size());
  for (const auto& s : v) w.str(s);
}

std::vector<std::string> read_strings(io::BinaryReader& r) {
  const std::uint64_t n = r.count(8);
  std::vector<std::string> v;
  v.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) v.push_back(r.str());
  return v;
}

}  // namespace

std::string Pipeline::serialize() const {
  io::BinaryWriter w;
  io::write_header(w, io::PayloadKind::Pipeline);
  write_config(w, config_);
  write_strings(w, resources_.stoplist.entries());
  w.u64(resources_.lexicon.entries().size());
  for (const auto& [surface, lemma] : resources_.lexicon.entries()) {
    w.str(surface);
    w.str(lemma);
  }
  write_strings(w, class_names_);
  w.u8(static_cast<std::uint8_t>(features_.index()));
  std::visit([&](const auto& model) { model.save(w); }, features_);
  svc_.save(w);
  return w.bytes();
}

Pipeline Pipeline::deserialize(std::string bytes) {
  io::BinaryReader r(std::move(bytes));
  io::read_header(r, io::PayloadKind::Pipeline);
  Pipeline p;
  p.config_ = read_config(r);
  p.resources_.stoplist = surface::Stoplist(read_strings(r));
  const std::uint64_t n_lex = r.count(16);
  std::vector<std::pair<std::string, std::string>> entries;
  entries.reserve(n_lex);
  for (std::uint64_t i = 0; i < n_lex; ++i) {
    std::string surface = r.str();
    entries.emplace_back(std::move(surface), r.str());
  }
  p.resources_.lexicon = morph::Lexicon(entries);
  p.class_names_ = read_strings(r);
  const std::size_t kind_at = r.offset();
  switch (r.u8()) {
    case 0: p.features_ = tfidf::UnionModel::load(r); break;
    case 1: p.features_ = fasttext::SupervisedTextModel::load(r); break;
    case 2: p.features_ = fasttext::EmbeddingModel::load(r); break;
    default: throw Error(ErrorCode::CorruptFile, "invalid feature model kind", static_cast<std::int64_t>(kind_at));
  }
  const std::size_t svc_at = r.offset();
  p.svc_ = svc::LinearSvcModel::load(r);
  r.expect_end();
  std::size_t dim = std::visit(
      [](const auto& model) -> std::size_t {
        using M = std::decay_t<decltype(model)>;
        if constexpr (std::is_same_v<M, tfidf::UnionModel>) return model.dimension();
        else return static_cast<std::size_t>(model.input.dim());
      },
      p.features_);
  if (p.svc_.dimension() != dim || p.svc_.class_count() != p.class_names_.size()) {
    throw Error(ErrorCode::CorruptFile, "classifier shape does not match feature model", static_cast<std::int64_t>(svc_at));
  }
  return p;
}

void Pipeline::save(const std::filesystem::path& path) const { io::write_file(path, serialize()); }

Pipeline Pipeline::load(const std::filesystem::path& path) { return deserialize(io::read_file(path)); }

}  // namespace adi::pipeline
