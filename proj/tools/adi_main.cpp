// adi: command-line front end for the dialect identification toolkit.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "adi/config.hpp"
#include "adi/corpus.hpp"
#include "adi/error.hpp"
#include "adi/experiment.hpp"
#include "adi/metrics.hpp"
#include "adi/parallel.hpp"
#include "adi/pipeline.hpp"
#include "adi/report.hpp"
#include "adi/serialize.hpp"
#include "adi/synthetic.hpp"

namespace fs = std::filesystem;
using namespace adi;

namespace {

surface::SurfaceConfig parse_surface_flags(const std::string& s) {
  if (s == "none") return {};
  if (s == "all") return surface::SurfaceConfig::all();
  if (s.size() != 5 || s.find_first_not_of("01") != std::string::npos) {
    throw Error(ErrorCode::InvalidValue, "--surface: expected none, all or five 0/1 flags, got '" + s + "'");
  }
  surface::SurfaceConfig c;
  c.normalize_letters = s[0] == '1';
  c.remove_punct_emoji = s[1] == '1';
  c.remove_stopwords = s[2] == '1';
  c.remove_diacritics = s[3] == '1';
  c.remove_non_arabic = s[4] == '1';
  return c;
}

pipeline::LanguageResources load_resources(const std::string& stoplist, const std::string& lexicon) {
  auto r = pipeline::LanguageResources::bundled();
  if (!stoplist.empty()) r.stoplist = surface::Stoplist::load(stoplist);
  if (!lexicon.empty()) r.lexicon = morph::Lexicon::load(lexicon);
  return r;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  out << text;
}

harness::ExperimentSpec load_spec(const std::string& name_or_path, bool full_grid) {
  if (name_or_path.rfind("exp", 0) == 0 && name_or_path.size() == 4 && !fs::exists(name_or_path)) {
    return harness::preset(harness::parse_experiment_id(name_or_path), full_grid);
  }
  return harness::parse_config(name_or_path, full_grid);
}

void print_progress(int epoch, double loss) {
  std::cerr << "epoch " << epoch << " loss " << loss << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arabic dialect identification toolkit"};
  app.require_subcommand(1);

  std::string stoplist_path, lexicon_path;
  app.add_option("--stoplist", stoplist_path, "Stoplist file (one token per line)")->check(CLI::ExistingFile);
  app.add_option("--lexicon", lexicon_path, "Lemma lexicon TSV (surface, lemma)")->check(CLI::ExistingFile);

  // stats
  auto* stats = app.add_subcommand("stats", "Corpus statistics");
  std::vector<std::string> stats_inputs;
  bool stats_kv = false, stats_unlabeled = false;
  stats->add_option("inputs", stats_inputs, "TSV files")->required()->check(CLI::ExistingFile);
  stats->add_flag("--kv", stats_kv, "key=value output");
  stats->add_flag("--unlabeled", stats_unlabeled, "Inputs have no label column");

  // preprocess
  auto* prep = app.add_subcommand("preprocess", "Apply surface and morphological preprocessing");
  std::string prep_in, prep_out = "-", prep_surface = "none", prep_morph = "none";
  bool prep_unlabeled = false;
  prep->add_option("input", prep_in, "Input TSV")->required()->check(CLI::ExistingFile);
  prep->add_option("-o,--output", prep_out, "Output TSV (default stdout)");
  prep->add_option("--surface", prep_surface, "none, all, or flags NPSDA e.g. 10100");
  prep->add_option("--morph", prep_morph, "none, stem, lemma, lemma_then_stem");
  prep->add_flag("--unlabeled", prep_unlabeled, "Input has no label column");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic corpus (train/dev/test TSV)");
  synthetic::SyntheticParams sp;
  std::string synth_dir;
  bool synth_affix = false;
  synth->add_option("out_dir", synth_dir, "Output directory")->required();
  synth->add_option("--classes", sp.classes)->capture_default_str();
  synth->add_option("--docs-per-class", sp.docs_per_class)->capture_default_str();
  synth->add_option("--private-vocab", sp.private_vocab)->capture_default_str();
  synth->add_option("--shared-vocab", sp.shared_vocab)->capture_default_str();
  synth->add_option("--min-tokens", sp.min_tokens)->capture_default_str();
  synth->add_option("--max-tokens", sp.max_tokens)->capture_default_str();
  synth->add_option("--seed", sp.seed)->capture_default_str();
  synth->add_flag("--affix", synth_affix, "Affix-signal corpus instead of vocabulary signal");

  // train
  auto* train = app.add_subcommand("train", "Fit a pipeline and save it");
  std::string train_in, train_model, train_config, train_source;
  std::optional<std::uint64_t> train_seed;
  train->add_option("input", train_in, "Labeled training TSV")->required()->check(CLI::ExistingFile);
  train->add_option("-m,--model", train_model, "Output model file")->required();
  train->add_option("-c,--config", train_config, "Pipeline config JSON")->check(CLI::ExistingFile);
  train->add_option("--source", train_source, "tfidf_union, fasttext_supervised, fasttext_unsupervised");
  train->add_option("--seed", train_seed, "Seed for the classifier and embeddings");

  // predict
  auto* predict = app.add_subcommand("predict", "Label documents with a saved pipeline");
  std::string pred_model, pred_in, pred_out = "-";
  bool pred_labeled = false;
  predict->add_option("-m,--model", pred_model, "Model file")->required()->check(CLI::ExistingFile);
  predict->add_option("input", pred_in, "Input TSV (id, text)")->required()->check(CLI::ExistingFile);
  predict->add_option("-o,--output", pred_out, "Output TSV (id, predicted label)");
  predict->add_flag("--labeled", pred_labeled, "Input has a label column (ignored)");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Score a saved pipeline on labeled data");
  std::string eval_model, eval_in, eval_confusion;
  bool eval_kv = false;
  evaluate->add_option("-m,--model", eval_model, "Model file")->required()->check(CLI::ExistingFile);
  evaluate->add_option("input", eval_in, "Labeled TSV")->required()->check(CLI::ExistingFile);
  evaluate->add_option("--confusion", eval_confusion, "Write the confusion matrix as TSV");
  evaluate->add_flag("--kv", eval_kv, "key=value output");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run a grid-searched experiment");
  std::string exp_config, exp_train, exp_dev, exp_test, exp_tsv, exp_save, exp_results;
  bool exp_full = false, exp_quiet = false;
  std::optional<std::uint64_t> exp_seed;
  std::optional<int> exp_runs;
  experiment->add_option("config", exp_config, "exp1..exp4 preset or a JSON config file")->required();
  experiment->add_option("--train", exp_train, "Labeled training TSV")->required()->check(CLI::ExistingFile);
  experiment->add_option("--dev", exp_dev, "Labeled development TSV")->required()->check(CLI::ExistingFile);
  experiment->add_option("--test", exp_test, "Test TSV (scored when labeled)")->check(CLI::ExistingFile);
  experiment->add_option("--seed", exp_seed, "Base seed; run r uses seed + r");
  experiment->add_option("--runs", exp_runs, "Number of runs");
  experiment->add_flag("--full-grid", exp_full, "Use the complete parameter ranges");
  experiment->add_option("--tsv", exp_tsv, "Write the report as TSV");
  experiment->add_option("--results", exp_results, "Write per-run results as JSON lines");
  experiment->add_option("--save-best", exp_save, "Save the best pipeline of the last run");
  experiment->add_flag("-q,--quiet", exp_quiet, "No per-point progress");

  // grid
  auto* grid = app.add_subcommand("grid", "List the grid points of an experiment");
  std::string grid_config;
  bool grid_full = false, grid_count = false;
  grid->add_option("config", grid_config, "exp1..exp4 preset or a JSON config file")->required();
  grid->add_flag("--full-grid", grid_full, "Use the complete parameter ranges");
  grid->add_flag("--count", grid_count, "Print only the number of points");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*stats) {
      std::vector<std::pair<std::string, corpus::StatsReport>> columns;
      for (const auto& path : stats_inputs) {
        const auto c = corpus::load_tsv(path, !stats_unlabeled);
        columns.emplace_back(fs::path(path).stem().string(), corpus::compute_stats(c));
      }
      if (stats_kv) {
        for (const auto& [name, s] : columns) std::cout << corpus::format_stats_kv(s, name + ".");
      } else {
        std::cout << corpus::format_stats_table(columns);
      }
    } else if (*prep) {
      const auto resources = load_resources(stoplist_path, lexicon_path);
      const auto sc = parse_surface_flags(prep_surface);
      const morph::MorphConfig mc{morph::parse_morph_mode(prep_morph)};
      const auto c = corpus::load_tsv(prep_in, !prep_unlabeled);
      const auto out = c.map_texts([&](const std::string& t) { return pipeline::preprocess(t, sc, mc, resources); });
      write_text(prep_out, corpus::format_tsv(out));
    } else if (*synth) {
      const auto splits = synth_affix ? synthetic::generate_affix_signal(sp.classes, sp.docs_per_class, sp.seed)
                                      : synthetic::generate(sp);
      fs::create_directories(synth_dir);
      corpus::write_tsv(splits.train, fs::path(synth_dir) / "train.tsv");
      corpus::write_tsv(splits.dev, fs::path(synth_dir) / "dev.tsv");
      corpus::write_tsv(splits.test, fs::path(synth_dir) / "test.tsv");
      std::cerr << "train " << splits.train.size() << ", dev " << splits.dev.size() << ", test " << splits.test.size()
                << '\n';
    } else if (*train) {
      const auto resources = load_resources(stoplist_path, lexicon_path);
      pipeline::PipelineConfig config;
      if (!train_config.empty()) config = harness::pipeline_config_from_json(io::read_file(train_config));
      if (!train_source.empty()) config.source = pipeline::parse_feature_source(train_source);
      if (train_seed) {
        config.svc.seed = *train_seed;
        config.fasttext.seed = *train_seed;
      }
      const auto c = corpus::load_tsv(train_in, true);
      auto p = pipeline::Pipeline::fit(config, c, resources, default_workers(), print_progress);
      p.save(train_model);
      std::cerr << "saved " << train_model << " (" << p.class_names().size() << " classes, " << p.feature_dimension()
                << " features)\n";
    } else if (*predict) {
      const auto p = pipeline::Pipeline::load(pred_model);
      const auto c = corpus::load_tsv(pred_in, pred_labeled);
      std::string out;
      for (const auto& d : c.documents()) out += d.id + "\t" + p.predict_label(d.text) + "\n";
      write_text(pred_out, out);
    } else if (*evaluate) {
      const auto p = pipeline::Pipeline::load(eval_model);
      const auto c = corpus::load_tsv(eval_in, true);
      const auto truth = harness::label_indices(c, p.class_names());
      std::vector<int> predicted;
      predicted.reserve(c.size());
      for (const auto& d : c.documents()) predicted.push_back(p.predict(d.text));
      const auto report = metrics::evaluate(truth, predicted, p.class_names().size());
      std::cout << (eval_kv ? metrics::format_report_kv(report, p.class_names())
                            : metrics::format_report(report, p.class_names()));
      if (!eval_confusion.empty()) write_text(eval_confusion, metrics::format_confusion_tsv(report.confusion, p.class_names()));
    } else if (*experiment) {
      auto spec = load_spec(exp_config, exp_full);
      if (exp_seed) spec.seed = *exp_seed;
      if (exp_runs) spec.runs = *exp_runs;
      for (const auto& w : spec.warnings) std::cerr << "warning: " << w << '\n';
      const auto train_c = corpus::load_tsv(exp_train, true);
      const auto dev_c = corpus::load_tsv(exp_dev, true);
      std::optional<corpus::Corpus> test_c;
      if (!exp_test.empty()) {
        const std::string content = io::read_file(exp_test);
        const auto first = content.substr(0, content.find('\n'));
        const bool labeled = std::count(first.begin(), first.end(), '\t') == 2;
        test_c = corpus::parse_tsv(content, labeled);
      }
      harness::RunOptions options;
      options.workers = default_workers();
      options.resources = load_resources(stoplist_path, lexicon_path);
      if (!exp_quiet) options.log = [](const std::string& line) { std::cerr << line << '\n'; };
      const auto results = harness::run_experiment(spec, train_c, dev_c, test_c, options);
      const auto report = harness::emit_report(results);
      std::cout << report.text;
      for (const auto& r : results) {
        std::cout << "run " << r.run_index + 1 << ": point " << r.chosen_index + 1 << "/" << r.evaluations.size()
                  << ", dev " << harness::format_percent(r.dev_macro_f1);
        if (r.test_macro_f1) std::cout << ", test " << harness::format_percent(*r.test_macro_f1);
        std::cout << ", " << r.wall_time << " s\n";
      }
      if (!exp_tsv.empty()) write_text(exp_tsv, report.tsv);
      if (!exp_results.empty()) {
        std::string lines;
        for (const auto& r : results) {
          auto j = nlohmann::json::parse(harness::pipeline_config_to_json(r.chosen_config));
          nlohmann::json row{{"experiment", std::string(harness::to_string(r.spec_id))},
                             {"run", r.run_index + 1},
                             {"grid_index", r.chosen_index},
                             {"dev_macro_f1", r.dev_macro_f1},
                             {"wall_time", r.wall_time},
                             {"config", j}};
          row["test_macro_f1"] = r.test_macro_f1 ? nlohmann::json(*r.test_macro_f1) : nlohmann::json(nullptr);
          lines += row.dump() + "\n";
        }
        write_text(exp_results, lines);
      }
      if (!exp_save.empty()) results.back().best_pipeline->save(exp_save);
    } else if (*grid) {
      const auto spec = load_spec(grid_config, grid_full);
      for (const auto& w : spec.warnings) std::cerr << "warning: " << w << '\n';
      const auto points = harness::enumerate_grid(spec);
      if (grid_count) {
        std::cout << points.size() << '\n';
      } else {
        for (std::size_t i = 0; i < points.size(); ++i) {
          std::cout << i + 1 << '\t' << nlohmann::json::parse(harness::pipeline_config_to_json(points[i])).dump() << '\n';
        }
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
