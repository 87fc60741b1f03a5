#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adi/pipeline.hpp"

// Declarative experiment specifications (JSON) and grid enumeration.
namespace adi::harness {

enum class ExperimentId { Exp1, Exp2, Exp3, Exp4 };

std::string_view to_string(ExperimentId id);
ExperimentId parse_experiment_id(std::string_view name);

struct NgramPair {
  int min = 1;
  int max = 1;
  bool operator==(const NgramPair&) const = default;
};

// Pairs (m, n) with m <= n, m in [m_lo, m_hi], n in [n_lo, n_hi]; the
// default arguments give the 27 pairs of the full grid.
std::vector<NgramPair> ngram_pairs(int m_lo = 1, int m_hi = 3, int n_lo = 1, int n_hi = 10);

struct ExperimentSpec {
  ExperimentId id = ExperimentId::Exp4;
  // nullopt = enumerate every config.
  std::optional<surface::SurfaceConfig> surface = surface::SurfaceConfig{};
  std::optional<morph::MorphConfig> morph = morph::MorphConfig{};
  std::vector<pipeline::FeatureSource> feature_sources{pipeline::FeatureSource::TfidfUnion};
  // Per analyzer (word, char, char_wb): a fixed n-gram range, or nullopt
  // to follow the shared n-gram grid dimension.
  std::array<std::optional<NgramPair>, 3> analyzer_ngrams{};
  std::vector<NgramPair> ngram_grid;
  // nullopt entries mean "no cap".
  std::vector<std::optional<std::size_t>> max_features_grid{std::nullopt};
  std::vector<tfidf::Weights> weight_grid{{1.0, 1.0, 1.0}};
  svc::SvcParams svc;
  fasttext::FastTextParams fasttext;
  int runs = 1;
  std::uint64_t seed = 0;
  // Non-fatal notices produced while parsing (e.g. the ignored svc.gamma).
  std::vector<std::string> warnings;
};

// Reduced desk-scale grid by default; full_grid widens every dimension to
// the complete published ranges.
ExperimentSpec preset(ExperimentId id, bool full_grid = false);

// Starts from preset(id, full_grid) and applies the keys present in the
// document. Throws UnknownKey, InvalidValue, SchemaViolation.
ExperimentSpec parse_config_text(std::string_view json_text, bool full_grid = false);
ExperimentSpec parse_config(const std::filesystem::path& path, bool full_grid = false);

// Checks the per-experiment invariants; throws SchemaViolation.
void validate_spec(const ExperimentSpec& spec);

// Cartesian product surface x morph x source x ngram x max_features x
// weights (outermost first). The TF-IDF dimensions collapse to a single
// point for FastText sources. Throws EmptyGrid.
std::vector<pipeline::PipelineConfig> enumerate_grid(const ExperimentSpec& spec);

// JSON round-trip of a single grid point; used for results files and by
// `adi train --config`.
std::string pipeline_config_to_json(const pipeline::PipelineConfig& config);
pipeline::PipelineConfig pipeline_config_from_json(std::string_view json_text);

}  // namespace adi::harness
