#include "adi/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <mutex>

#include "adi/error.hpp"
#include "adi/parallel.hpp"

namespace adi::harness {

namespace {

struct PreparedTexts {
  std::vector<std::string> train;
  std::vector<std::string> dev;
  std::vector<std::string> test;
};

using PrepKey = std::pair<std::string, int>;

PrepKey prep_key(const pipeline::PipelineConfig& c) {
  return {c.surface.flags(), static_cast<int>(c.morph.mode)};
}

std::vector<std::string> prepare(const std::vector<std::string>& raw, const pipeline::PipelineConfig& c,
                                 const pipeline::LanguageResources& resources) {
  std::vector<std::string> out;
  out.reserve(raw.size());
  for (const auto& t : raw) out.push_back(pipeline::preprocess(t, c.surface, c.morph, resources));
  return out;
}

std::vector<int> predict_all(const pipeline::Pipeline& p, const std::vector<std::string>& texts) {
  std::vector<int> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(p.predict_preprocessed(t));
  return out;
}

[[noreturn]] void rethrow_with_context(const Error& e, std::size_t index) {
  throw Error(e.code(), "grid point " + std::to_string(index) + ": " + e.detail(), e.position());
}

}  // namespace

std::vector<int> label_indices(const corpus::Corpus& corpus, const std::vector<std::string>& classes) {
  std::vector<int> out;
  out.reserve(corpus.size());
  for (const auto& d : corpus.documents()) {
    if (!d.label) throw Error(ErrorCode::UnlabeledDocument, "document '" + d.id + "' has no label");
    const auto it = std::lower_bound(classes.begin(), classes.end(), *d.label);
    if (it == classes.end() || *it != *d.label) {
      throw Error(ErrorCode::LabelMismatch, "label '" + *d.label + "' of document '" + d.id + "' does not occur in train");
    }
    out.push_back(static_cast<int>(it - classes.begin()));
  }
  return out;
}

std::vector<RunResult> run_experiment(const ExperimentSpec& spec, const corpus::Corpus& train, const corpus::Corpus& dev,
                                      const std::optional<corpus::Corpus>& test, const RunOptions& options) {
  validate_spec(spec);
  auto log = [&](const std::string& line) {
    if (options.log) options.log(line);
  };
  const auto& classes = train.label_set();
  const auto train_labels = label_indices(train, classes);
  const auto dev_labels = label_indices(dev, classes);
  const bool score_test = test && !test->empty() && test->all_labeled();
  const auto test_labels = score_test ? label_indices(*test, classes) : std::vector<int>{};
  if (classes.size() < 2) throw Error(ErrorCode::SingleClass, "train has fewer than two classes");

  const auto grid = enumerate_grid(spec);
  log(std::string(to_string(spec.id)) + ": " + std::to_string(grid.size()) + " grid points x " +
      std::to_string(spec.runs) + " runs");

  const auto train_raw = corpus::texts(train);
  const auto dev_raw = corpus::texts(dev);
  const auto test_raw = score_test ? corpus::texts(*test) : std::vector<std::string>{};
  std::map<PrepKey, PreparedTexts> prepared;
  for (const auto& c : grid) {
    const auto key = prep_key(c);
    if (prepared.count(key)) continue;
    prepared[key] = PreparedTexts{prepare(train_raw, c, options.resources), prepare(dev_raw, c, options.resources),
                                  prepare(test_raw, c, options.resources)};
  }

  const unsigned workers = std::max(1u, options.workers);
  const unsigned outer = grid.size() > 1 ? workers : 1;
  const unsigned inner = grid.size() > 1 ? 1 : workers;

  std::vector<RunResult> results;
  for (int run = 0; run < spec.runs; ++run) {
    const auto started = std::chrono::steady_clock::now();
    const std::uint64_t seed = spec.seed + static_cast<std::uint64_t>(run);
    RunResult r;
    r.spec_id = spec.id;
    r.run_index = run;
    r.evaluations.assign(grid.size(), 0.0);
    std::mutex best_mutex;
    std::shared_ptr<const pipeline::Pipeline> best;
    std::size_t best_index = 0;
    double best_f1 = -1.0;
    std::mutex log_mutex;

    parallel_for(grid.size(), outer, [&](std::size_t i) {
      auto config = grid[i];
      config.svc.seed = seed;
      config.fasttext.seed = seed;
      const auto& texts = prepared.at(prep_key(config));
      std::shared_ptr<const pipeline::Pipeline> fitted;
      double f1 = 0.0;
      try {
        fitted = std::make_shared<const pipeline::Pipeline>(pipeline::Pipeline::fit_preprocessed(
            config, texts.train, train_labels, classes, options.resources, inner));
        const auto predicted = predict_all(*fitted, texts.dev);
        f1 = metrics::evaluate(dev_labels, predicted, classes.size()).macro_f1;
      } catch (const Error& e) {
        rethrow_with_context(e, i);
      }
      r.evaluations[i] = f1;
      {
        std::lock_guard lock(best_mutex);
        if (f1 > best_f1 || (f1 == best_f1 && i < best_index)) {
          best_f1 = f1;
          best_index = i;
          best = std::move(fitted);
        }
      }
      if (options.log) {
        std::lock_guard lock(log_mutex);
        options.log("run " + std::to_string(run + 1) + " point " + std::to_string(i + 1) + "/" +
                    std::to_string(grid.size()) + " dev macro-F1 " + std::to_string(f1));
      }
    });

    r.chosen_index = best_index;
    r.chosen_config = best->config();
    r.dev_macro_f1 = best_f1;
    r.best_pipeline = best;
    if (score_test) {
      const auto& texts = prepared.at(prep_key(r.chosen_config));
      auto report = metrics::evaluate(test_labels, predict_all(*best, texts.test), classes.size());
      r.test_macro_f1 = report.macro_f1;
      r.test_report = std::move(report);
    }
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    log("run " + std::to_string(run + 1) + ": best point " + std::to_string(best_index + 1) + " dev macro-F1 " +
        std::to_string(best_f1));
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace adi::harness
