#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"

#include "adi/config.hpp"
#include "adi/error.hpp"
#include "adi/experiment.hpp"
#include "adi/report.hpp"
#include "adi/synthetic.hpp"
#include "pipeline_fixtures.hpp"

using namespace adi;
using namespace adi::harness;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::IoError;
}

ExperimentSpec tiny_exp4() {
  auto s = parse_config_text(R"({"id": "exp4", "runs": 2, "seed": 5,
    "ngram_grid": [[1, 2], [2, 4]], "weights": {"triples": [[1, 1, 1], [0.5, 1, 1]]}})");
  return s;
}

}  // namespace

TEST_CASE("n-gram pairs") {
  const auto pairs = ngram_pairs();
  CHECK(pairs.size() == 27);
  CHECK(pairs.front() == NgramPair{1, 1});
  CHECK(pairs.back() == NgramPair{3, 10});
  for (const auto& p : pairs) CHECK(p.min <= p.max);
}

TEST_CASE("config examples") {
  const auto s = parse_config_text(R"({"id": "exp4", "weights": {"values": [0.5, 0.75, 1.0]}})");
  CHECK(s.weight_grid.size() == 27);
  CHECK(code_of([] { parse_config_text(R"({"id": "exp4", "gama": 1})"); }) == ErrorCode::UnknownKey);
  CHECK(code_of([] { parse_config_text(R"({"id": "exp4", "svc": {"C": -1}})"); }) == ErrorCode::InvalidValue);
  CHECK(code_of([] { parse_config_text(R"({"id": "exp9"})"); }) == ErrorCode::InvalidValue);
  CHECK(code_of([] { parse_config_text(R"({"runs": 2})"); }) == ErrorCode::SchemaViolation);
  CHECK(code_of([] { parse_config_text("{not json"); }) == ErrorCode::SchemaViolation);
  CHECK(code_of([] { parse_config_text(R"({"id": "exp4", "weights": [0, 1, 1]})"); }) == ErrorCode::InvalidValue);
  CHECK(code_of([] { parse_config_text(R"({"id": "exp4", "fasttext": {"dimm": 3}})"); }) == ErrorCode::UnknownKey);
}

TEST_CASE("gamma is accepted with a warning") {
  const auto s = parse_config_text(R"({"id": "exp4", "svc": {"C": 10, "gamma": 0.1}})");
  CHECK(s.svc.C == 10.0);
  CHECK(s.warnings.size() == 1);
}

TEST_CASE("experiment invariants") {
  CHECK(code_of([] { parse_config_text(R"({"id": "exp1", "surface": "none"})"); }) == ErrorCode::SchemaViolation);
  CHECK(code_of([] { parse_config_text(R"({"id": "exp1", "weights": [0.5, 1, 1]})"); }) == ErrorCode::SchemaViolation);
  CHECK(code_of([] { parse_config_text(R"({"id": "exp2", "surface": "all"})"); }) == ErrorCode::SchemaViolation);
  CHECK(code_of([] { parse_config_text(R"({"id": "exp3", "feature_source": "tfidf_union"})"); }) ==
        ErrorCode::SchemaViolation);
  CHECK(code_of([] { parse_config_text(R"({"id": "exp4", "morph": "stem"})"); }) == ErrorCode::SchemaViolation);
  CHECK_NOTHROW(parse_config_text(R"({"id": "exp3", "feature_source": ["fasttext_supervised"]})"));
}

TEST_CASE("grid sizes") {
  auto s = preset(ExperimentId::Exp1);
  s.ngram_grid = {{1, 3}};
  CHECK(enumerate_grid(s).size() == 32);
  auto m = preset(ExperimentId::Exp2);
  m.ngram_grid = {{1, 3}};
  CHECK(enumerate_grid(m).size() == 4);
  auto n = preset(ExperimentId::Exp4);
  n.weight_grid = {{1.0, 1.0, 1.0}};
  CHECK(enumerate_grid(n).size() == 27);
  const auto w = parse_config_text(R"({"id": "exp4", "ngram_grid": [[1, 3]], "weights": {"values": [0.5, 1.0]}})");
  CHECK(enumerate_grid(w).size() == 8);
  CHECK(enumerate_grid(preset(ExperimentId::Exp4)).size() == 81);
  CHECK(enumerate_grid(preset(ExperimentId::Exp3)).size() == 2);
  CHECK(enumerate_grid(preset(ExperimentId::Exp4, true)).size() == 27 * 4 * 27);
}

TEST_CASE("grid layout") {
  const auto grid = enumerate_grid(tiny_exp4());
  REQUIRE(grid.size() == 4);
  CHECK(grid[0].analyzers[0].ngram_min == 1);
  CHECK(grid[0].analyzers[0].ngram_max == 2);
  CHECK(grid[0].analyzers[1].ngram_max == 2);
  CHECK(grid[1].weights == tfidf::Weights{0.5, 1.0, 1.0});
  CHECK(grid[2].analyzers[2].ngram_min == 2);
  CHECK(grid[2].analyzers[2].ngram_max == 4);
  auto empty = tiny_exp4();
  empty.weight_grid.clear();
  CHECK(code_of([&] { enumerate_grid(empty); }) == ErrorCode::EmptyGrid);
}

TEST_CASE("pipeline config json round trip") {
  for (const auto& c : fixtures::pipeline_variants()) {
    CHECK(pipeline_config_from_json(pipeline_config_to_json(c)) == c);
  }
}

TEST_CASE("percent formatting") {
  CHECK(format_percent(0.625139) == "62.51");
  CHECK(format_percent(1.0) == "100.00");
  CHECK(format_percent(0.0) == "0.00");
  CHECK(format_percent(0.53100) == "53.10");
}

TEST_CASE("report layout") {
  CHECK(code_of([] { emit_report({}); }) == ErrorCode::EmptyResults);
  std::vector<RunResult> rs;
  const double row[4] = {0.5396, 0.5956, 0.6066, 0.6284};
  for (int e = 0; e < 4; ++e) {
    RunResult r;
    r.spec_id = static_cast<ExperimentId>(e);
    r.run_index = 2;
    r.dev_macro_f1 = row[e];
    rs.push_back(r);
  }
  const auto rep = emit_report(rs);
  CHECK(rep.tsv == "dev\tExp_1\tExp_2\tExp_3\tExp_4\nRun 3\t53.96\t59.56\t60.66\t62.84*\n");
  CHECK(rep.text.find("62.84*") != std::string::npos);

  RunResult single;
  single.dev_macro_f1 = 0.625139;
  const auto one = emit_report({single});
  CHECK(one.tsv == "dev\tExp_4\nRun 1\t62.51*\n");
}

TEST_CASE("synthetic corpus") {
  const auto a = synthetic::generate(synthetic::SyntheticParams{});
  CHECK(a.train.size() + a.dev.size() + a.test.size() == 1800);
  CHECK(a.train.size() == 1440);
  CHECK(a.train.label_set().size() == 18);
  const auto b = synthetic::generate(synthetic::SyntheticParams{});
  CHECK(corpus::format_tsv(a.train) == corpus::format_tsv(b.train));
  CHECK(corpus::format_tsv(a.test) == corpus::format_tsv(b.test));
  auto other = synthetic::SyntheticParams{};
  other.seed = 8;
  CHECK(corpus::format_tsv(synthetic::generate(other).train) != corpus::format_tsv(a.train));
}

TEST_CASE("disjoint vocabularies separate perfectly") {
  synthetic::SyntheticParams p;
  p.classes = 2;
  p.shared_vocab = 0;
  p.docs_per_class = 40;
  const auto s = synthetic::generate(p);
  const auto pl = pipeline::Pipeline::fit(pipeline::PipelineConfig{}, s.train, pipeline::LanguageResources::bundled());
  for (const auto& d : s.test.documents()) CHECK(pl.predict_label(d.text) == *d.label);
}

TEST_CASE("run experiment") {
  const auto data = fixtures::small_synthetic();
  const auto spec = tiny_exp4();
  const auto results = run_experiment(spec, data.train, data.dev, data.test);
  REQUIRE(results.size() == 2);
  for (const auto& r : results) {
    CHECK(r.evaluations.size() == 4);
    CHECK(r.dev_macro_f1 == *std::max_element(r.evaluations.begin(), r.evaluations.end()));
    CHECK(r.evaluations[r.chosen_index] == r.dev_macro_f1);
    for (std::size_t i = 0; i < r.chosen_index; ++i) CHECK(r.evaluations[i] < r.dev_macro_f1);
    CHECK(r.dev_macro_f1 >= 0.0);
    CHECK(r.dev_macro_f1 <= 1.0);
    CHECK(r.test_macro_f1.has_value());
    CHECK(r.chosen_config.svc.seed == spec.seed + static_cast<std::uint64_t>(r.run_index));
    REQUIRE(r.best_pipeline);
  }
  // Same spec and seed, same results.
  RunOptions two_workers;
  two_workers.workers = 2;
  const auto again = run_experiment(spec, data.train, data.dev, data.test, two_workers);
  for (std::size_t i = 0; i < results.size(); ++i) {
    CHECK(again[i].evaluations == results[i].evaluations);
    CHECK(again[i].chosen_index == results[i].chosen_index);
    CHECK(again[i].test_macro_f1 == results[i].test_macro_f1);
  }
}

TEST_CASE("fitting never sees dev or test") {
  const auto data = fixtures::small_synthetic();
  const auto spec = tiny_exp4();
  const auto with_test = run_experiment(spec, data.train, data.dev, data.test);
  const auto without = run_experiment(spec, data.train, data.dev, std::nullopt);
  for (std::size_t i = 0; i < with_test.size(); ++i) {
    CHECK(with_test[i].best_pipeline->serialize() == without[i].best_pipeline->serialize());
  }
  const auto direct = pipeline::Pipeline::fit(with_test[0].chosen_config, data.train,
                                              pipeline::LanguageResources::bundled());
  CHECK(direct.serialize() == with_test[0].best_pipeline->serialize());
}

TEST_CASE("dev labels must occur in train") {
  const auto data = fixtures::small_synthetic();
  auto docs = data.dev.documents();
  docs[0].label = "Atlantis";
  const corpus::Corpus dev(docs);
  CHECK(code_of([&] { run_experiment(tiny_exp4(), data.train, dev, std::nullopt); }) == ErrorCode::LabelMismatch);
}

TEST_CASE("pipeline persistence") {
  CHECK(fixtures::persistence_mismatches(20, 5) == 0);
}

TEST_CASE("corrupt and mismatched model files") {
  const auto data = fixtures::small_synthetic();
  const auto p = pipeline::Pipeline::fit(pipeline::PipelineConfig{}, data.train, pipeline::LanguageResources::bundled());
  const auto bytes = p.serialize();
  CHECK(code_of([&] { pipeline::Pipeline::deserialize(bytes.substr(0, bytes.size() / 2)); }) == ErrorCode::CorruptFile);
  CHECK(code_of([&] { pipeline::Pipeline::deserialize(bytes + "x"); }) == ErrorCode::CorruptFile);
  auto bumped = bytes;
  bumped[4] = static_cast<char>(bumped[4] + 1);
  CHECK(code_of([&] { pipeline::Pipeline::deserialize(bumped); }) == ErrorCode::VersionMismatch);
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  CHECK(code_of([&] { pipeline::Pipeline::deserialize(bad_magic); }) == ErrorCode::CorruptFile);

  const auto path = std::filesystem::temp_directory_path() / "adi_pipeline_test.bin";
  p.save(path);
  const auto back = pipeline::Pipeline::load(path);
  CHECK(back.serialize() == bytes);
  std::filesystem::remove(path);
}

TEST_CASE("preprocessing removes the affix signal") {
  const auto r = fixtures::preprocessing_harm(7);
  CHECK(r.preprocessed < r.plain);
}

TEST_CASE("error exit codes") {
  CHECK(exit_code_for(ErrorCode::UnknownKey) == 1);
  CHECK(exit_code_for(ErrorCode::InvalidValue) == 1);
  CHECK(exit_code_for(ErrorCode::MalformedRow) == 2);
  CHECK(exit_code_for(ErrorCode::CorruptFile) == 2);
}
