#pragma once

#include <string>
#include <vector>

#include "adi/experiment.hpp"
#include "adi/pipeline.hpp"
#include "adi/synthetic.hpp"
#include "support.hpp"

namespace fixtures {

inline adi::synthetic::Splits small_synthetic(std::uint64_t seed = 7, int classes = 4, int docs = 30) {
  adi::synthetic::SyntheticParams p;
  p.classes = classes;
  p.docs_per_class = docs;
  p.private_vocab = 15;
  p.shared_vocab = 40;
  p.min_tokens = 4;
  p.max_tokens = 12;
  p.seed = seed;
  return adi::synthetic::generate(p);
}

// One configuration per feature source, with and without preprocessing.
inline std::vector<adi::pipeline::PipelineConfig> pipeline_variants() {
  using adi::pipeline::FeatureSource;
  std::vector<adi::pipeline::PipelineConfig> out;
  for (auto source : {FeatureSource::TfidfUnion, FeatureSource::FastTextSupervised, FeatureSource::FastTextUnsupervised}) {
    for (bool preprocess : {false, true}) {
      adi::pipeline::PipelineConfig c;
      c.source = source;
      c.fasttext.dim = 16;
      c.fasttext.epochs = 3;
      c.fasttext.bucket_count = 20000;
      c.svc.seed = 3;
      c.fasttext.seed = 3;
      if (preprocess) {
        c.surface = adi::surface::SurfaceConfig::all();
        c.morph.mode = adi::morph::MorphMode::LemmaThenStem;
        c.weights = {0.5, 0.75, 1.0};
        c.analyzers[1].max_features = 300;
      }
      out.push_back(c);
    }
  }
  return out;
}

// Number of fuzzed texts whose prediction or feature vector changes after
// a save/load round trip, summed over all variants.
inline int persistence_mismatches(int texts, std::uint64_t seed) {
  const auto data = small_synthetic(seed);
  const auto resources = adi::pipeline::LanguageResources::bundled();
  adi::Rng rng(seed);
  int mismatches = 0;
  for (const auto& config : pipeline_variants()) {
    const auto p = adi::pipeline::Pipeline::fit(config, data.train, resources);
    const auto back = adi::pipeline::Pipeline::deserialize(p.serialize());
    for (int i = 0; i < texts; ++i) {
      const auto text = i % 2 ? testing::fuzz_text(rng, 40) : data.dev.documents()[i % data.dev.size()].text;
      const auto pre = p.preprocess(text);
      if (p.predict(text) != back.predict(text) ||
          p.features_preprocessed(pre) != back.features_preprocessed(back.preprocess(text)) ||
          p.classifier().decision_values(p.features_preprocessed(pre)) !=
              back.classifier().decision_values(back.features_preprocessed(pre))) {
        ++mismatches;
      }
    }
  }
  return mismatches;
}

struct HarmResult {
  double plain = 0.0;
  double preprocessed = 0.0;
};

// Dev macro-F1 with no preprocessing versus every surface step plus
// lemmatization and stemming, on a corpus whose signal lives in affixes
// and punctuation.
inline HarmResult preprocessing_harm(std::uint64_t seed) {
  const auto data = adi::synthetic::generate_affix_signal(18, 60, seed);
  const auto resources = adi::pipeline::LanguageResources::bundled();
  adi::pipeline::PipelineConfig plain;
  plain.svc.seed = seed;
  auto heavy = plain;
  heavy.surface = adi::surface::SurfaceConfig::all();
  heavy.morph.mode = adi::morph::MorphMode::LemmaThenStem;
  const auto& classes = data.train.label_set();
  const auto truth = adi::harness::label_indices(data.dev, classes);
  auto score = [&](const adi::pipeline::PipelineConfig& c) {
    const auto p = adi::pipeline::Pipeline::fit(c, data.train, resources);
    std::vector<int> pred;
    for (const auto& d : data.dev.documents()) pred.push_back(p.predict(d.text));
    return adi::metrics::evaluate(truth, pred, classes.size()).macro_f1;
  };
  return HarmResult{score(plain), score(heavy)};
}

}  // namespace fixtures
