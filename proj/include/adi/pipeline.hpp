#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "adi/corpus.hpp"
#include "adi/fasttext.hpp"
#include "adi/linear_svc.hpp"
#include "adi/morph.hpp"
#include "adi/surface_norm.hpp"
#include "adi/tfidf.hpp"

namespace adi::pipeline {

enum class FeatureSource : std::uint8_t { TfidfUnion = 0, FastTextSupervised = 1, FastTextUnsupervised = 2 };

std::string_view to_string(FeatureSource source);
FeatureSource parse_feature_source(std::string_view name);

// One fully specified grid point: preprocessing, features and classifier.
struct PipelineConfig {
  surface::SurfaceConfig surface;
  morph::MorphConfig morph;
  FeatureSource source = FeatureSource::TfidfUnion;
  std::array<tfidf::AnalyzerConfig, 3> analyzers{
      tfidf::AnalyzerConfig{tfidf::AnalyzerKind::Word, 1, 2, std::nullopt},
      tfidf::AnalyzerConfig{tfidf::AnalyzerKind::Char, 1, 4, std::nullopt},
      tfidf::AnalyzerConfig{tfidf::AnalyzerKind::CharWb, 2, 5, std::nullopt},
  };
  tfidf::Weights weights{1.0, 1.0, 1.0};
  fasttext::FastTextParams fasttext;
  svc::SvcParams svc;

  bool operator==(const PipelineConfig&) const = default;
};

// Stoplist and lexicon used by the preprocessing phases.
struct LanguageResources {
  surface::Stoplist stoplist;
  morph::Lexicon lexicon;

  static LanguageResources bundled();
};

// Phase 1 then Phase 2.
std::string preprocess(std::string_view text, const surface::SurfaceConfig& surface, const morph::MorphConfig& morph,
                       const LanguageResources& resources);

class Pipeline {
 public:
  // Fits every component on the training corpus only.
  static Pipeline fit(const PipelineConfig& config, const corpus::Corpus& train, const LanguageResources& resources,
                      unsigned workers = 1, const fasttext::ProgressFn& progress = {});
  // Fits on texts that were already preprocessed with this config.
  static Pipeline fit_preprocessed(const PipelineConfig& config, std::span<const std::string> texts,
                                   std::span<const int> labels, std::vector<std::string> class_names,
                                   const LanguageResources& resources, unsigned workers = 1,
                                   const fasttext::ProgressFn& progress = {});

  std::string preprocess(std::string_view text) const;
  SparseVector features_preprocessed(std::string_view text) const;
  int predict_preprocessed(std::string_view text) const;
  int predict(std::string_view text) const;
  std::string predict_label(std::string_view text) const;

  const PipelineConfig& config() const { return config_; }
  const std::vector<std::string>& class_names() const { return class_names_; }
  const svc::LinearSvcModel& classifier() const { return svc_; }
  std::size_t feature_dimension() const { return svc_.dimension(); }

  std::string serialize() const;
  // Throws VersionMismatch / CorruptFile(offset).
  static Pipeline deserialize(std::string bytes);
  void save(const std::filesystem::path& path) const;
  static Pipeline load(const std::filesystem::path& path);

 private:
  PipelineConfig config_;
  LanguageResources resources_;
  std::vector<std::string> class_names_;
  std::variant<tfidf::UnionModel, fasttext::SupervisedTextModel, fasttext::EmbeddingModel> features_;
  svc::LinearSvcModel svc_;
};

}  // namespace adi::pipeline
