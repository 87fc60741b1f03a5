#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "adi/config.hpp"
#include "adi/corpus.hpp"
#include "adi/metrics.hpp"
#include "adi/pipeline.hpp"

namespace adi::harness {

struct RunOptions {
  unsigned workers = 1;
  pipeline::LanguageResources resources = pipeline::LanguageResources::bundled();
  std::function<void(const std::string&)> log;
};

struct RunResult {
  ExperimentId spec_id = ExperimentId::Exp4;
  int run_index = 0;
  std::size_t chosen_index = 0;
  pipeline::PipelineConfig chosen_config;
  double dev_macro_f1 = 0.0;
  std::optional<double> test_macro_f1;
  std::optional<metrics::EvalReport> test_report;
  double wall_time = 0.0;
  // Dev macro-F1 of every grid point, in grid order.
  std::vector<double> evaluations;
  std::shared_ptr<const pipeline::Pipeline> best_pipeline;
};

// Labels of `corpus` as indices into `classes`. Throws UnlabeledDocument,
// LabelMismatch when a label is not in `classes`.
std::vector<int> label_indices(const corpus::Corpus& corpus, const std::vector<std::string>& classes);

// One RunResult per run. Every grid point is fit on train and scored on
// dev; the best dev macro-F1 (lowest grid index on ties) is kept and, when
// test is labeled, rescored on test. Run r uses seed spec.seed + r.
std::vector<RunResult> run_experiment(const ExperimentSpec& spec, const corpus::Corpus& train, const corpus::Corpus& dev,
                                      const std::optional<corpus::Corpus>& test, const RunOptions& options = {});

}  // namespace adi::harness
