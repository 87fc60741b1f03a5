#include <cmath>
#include <map>

#include "doctest.h"

#include "adi/error.hpp"
#include "adi/tfidf.hpp"
#include "oracles/analyzer_oracle.hpp"
#include "oracles/tfidf_oracle.hpp"
#include "support.hpp"

using namespace adi;
using namespace adi::tfidf;

namespace {

AnalyzerConfig cfg(AnalyzerKind kind, int m, int n, std::optional<std::size_t> cap = std::nullopt) {
  return AnalyzerConfig{kind, m, n, cap};
}

oracle::Kind oracle_kind(AnalyzerKind k) {
  return k == AnalyzerKind::Word ? oracle::Kind::Word : k == AnalyzerKind::Char ? oracle::Kind::Char : oracle::Kind::CharWb;
}

const std::vector<std::string> kFitTexts{"aa ab", "ab"};

}  // namespace

TEST_CASE("analyzer definitions") {
  using V = std::vector<std::string>;
  CHECK(analyze("a b c", cfg(AnalyzerKind::Word, 1, 2)) == V{"a", "b", "c", "a b", "b c"});
  CHECK(analyze("ab", cfg(AnalyzerKind::CharWb, 2, 2)) == V{" a", "ab", "b "});
  CHECK(analyze("ab", cfg(AnalyzerKind::Char, 3, 3)).empty());
  CHECK(analyze("ab", cfg(AnalyzerKind::CharWb, 3, 3)) == V{" ab", "ab "});
  CHECK(analyze("", cfg(AnalyzerKind::Word, 1, 3)).empty());
  CHECK(analyze("", cfg(AnalyzerKind::CharWb, 1, 3)).empty());
}

TEST_CASE("char_wb emits a short padded token once per k") {
  using V = std::vector<std::string>;
  CHECK(analyze("a", cfg(AnalyzerKind::CharWb, 4, 5)) == V{" a ", " a "});
  CHECK(analyze("a bc", cfg(AnalyzerKind::CharWb, 4, 4)) == V{" a ", " bc "});
}

TEST_CASE("char analyzer keeps raw whitespace") {
  using V = std::vector<std::string>;
  CHECK(analyze("a  b", cfg(AnalyzerKind::Char, 2, 2)) == V{"a ", "  ", " b"});
}

TEST_CASE("analyzers match the reference semantics on fuzzed text") {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto text = testing::fuzz_text(rng, 16);
    for (auto kind : {AnalyzerKind::Word, AnalyzerKind::Char, AnalyzerKind::CharWb}) {
      const int m = static_cast<int>(uniform_int(rng, 1, 3));
      const int n = static_cast<int>(uniform_int(rng, m, 6));
      CHECK(analyze(text, cfg(kind, m, n)) == oracle::analyze(text, oracle_kind(kind), m, n));
    }
  }
}

TEST_CASE("char_wb never spans two tokens") {
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto text = testing::fuzz_words(rng, U"ab جد", 6);
    for (const auto& term : analyze(text, cfg(AnalyzerKind::CharWb, 1, 6))) {
      const auto u = unicode::decode(term);
      for (std::size_t k = 1; k + 1 < u.size(); ++k) CHECK(u[k] != U' ');
    }
  }
}

TEST_CASE("fit fixture") {
  const auto m = TfidfModel::fit(kFitTexts, cfg(AnalyzerKind::Word, 1, 1));
  REQUIRE(m.terms() == std::vector<std::string>{"aa", "ab"});
  CHECK(m.idf()[0] == doctest::Approx(std::log(1.5) + 1.0).epsilon(1e-15));
  CHECK(m.idf()[0] == doctest::Approx(1.40546511).epsilon(1e-8));
  CHECK(m.idf()[1] == 1.0);
}

TEST_CASE("frequency cap") {
  const auto m = TfidfModel::fit(kFitTexts, cfg(AnalyzerKind::Word, 1, 1, 1));
  CHECK(m.terms() == std::vector<std::string>{"ab"});
  // Equal totals keep the lexicographically smaller term.
  const auto tie = TfidfModel::fit(std::vector<std::string>{"b a", "c"}, cfg(AnalyzerKind::Word, 1, 1, 2));
  CHECK(tie.terms() == std::vector<std::string>{"a", "b"});
}

TEST_CASE("transform fixture") {
  const auto m = TfidfModel::fit(kFitTexts, cfg(AnalyzerKind::Word, 1, 1));
  const auto ab = m.transform("ab");
  REQUIRE(ab.entries.size() == 1);
  CHECK(ab.entries[0].first == 1);
  CHECK(ab.entries[0].second == 1.0);
  const auto both = m.transform("aa ab");
  REQUIRE(both.entries.size() == 2);
  // Reference values from a standard smoothed-idf vectorizer.
  CHECK(both.entries[0].second == doctest::Approx(0.81480247).epsilon(1e-8));
  CHECK(both.entries[1].second == doctest::Approx(0.57973867).epsilon(1e-8));
  CHECK(m.transform("zz qq").empty());
  CHECK(m.transform("zz").dimension == 2);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(TfidfModel::fit(std::vector<std::string>{}, cfg(AnalyzerKind::Word, 1, 1)), Error);
  CHECK_THROWS_AS(TfidfModel::fit(std::vector<std::string>{"", " "}, cfg(AnalyzerKind::Word, 1, 1)), Error);
  CHECK_THROWS_AS(cfg(AnalyzerKind::Word, 2, 1).validate(), Error);
  CHECK_THROWS_AS(cfg(AnalyzerKind::Word, 0, 1).validate(), Error);
}

TEST_CASE("matrix matches the brute-force oracle") {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::string> docs;
    const auto count = uniform_int(rng, 1, 5);
    for (std::int64_t d = 0; d < count; ++d) docs.push_back(testing::fuzz_words(rng, U"abcده", 8, 3));
    docs[0] += " a b c";
    const auto kind = static_cast<AnalyzerKind>(uniform_index(rng, 3));
    const int m = static_cast<int>(uniform_int(rng, 1, 3));
    const int n = static_cast<int>(uniform_int(rng, m, 5));
    std::optional<std::size_t> cap;
    if (uniform_index(rng, 2)) cap = static_cast<std::size_t>(uniform_int(rng, 1, 12));
    const auto model = TfidfModel::fit(docs, cfg(kind, m, n, cap));
    const auto ref = oracle::brute_force_tfidf(docs, docs, oracle_kind(kind), m, n, cap);
    REQUIRE(model.terms() == ref.terms);
    for (std::size_t j = 0; j < ref.idf.size(); ++j) CHECK(std::abs(model.idf()[j] - ref.idf[j]) <= 1e-12);
    for (std::size_t d = 0; d < docs.size(); ++d) {
      const auto dense = model.transform(docs[d]).to_dense();
      for (std::size_t j = 0; j < dense.size(); ++j) CHECK(std::abs(dense[j] - ref.rows[d][j]) <= 1e-9);
    }
  }
}

TEST_CASE("cap keeps the most frequent terms") {
  Rng rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::string> docs;
    for (int d = 0; d < 4; ++d) docs.push_back(testing::fuzz_words(rng, U"abcde", 10, 2) + " a");
    const std::size_t cap = static_cast<std::size_t>(uniform_int(rng, 1, 6));
    const auto full = TfidfModel::fit(docs, cfg(AnalyzerKind::Word, 1, 1));
    const auto capped = TfidfModel::fit(docs, cfg(AnalyzerKind::Word, 1, 1, cap));
    CHECK(capped.dimension() <= cap);
    std::map<std::string, std::size_t> tf;
    for (const auto& d : docs)
      for (const auto& t : analyze(d, cfg(AnalyzerKind::Word, 1, 1))) ++tf[t];
    std::size_t min_kept = SIZE_MAX;
    for (const auto& t : capped.terms()) min_kept = std::min(min_kept, tf[t]);
    for (const auto& t : full.terms()) {
      if (!capped.index_of(t)) CHECK(tf[t] <= min_kept);
    }
  }
}

TEST_CASE("transform output is unit length or empty") {
  Rng rng(29);
  std::vector<std::string> docs;
  for (int d = 0; d < 6; ++d) docs.push_back(testing::fuzz_words(rng, U"abcdوز", 10));
  docs.push_back("a");
  const auto model = TfidfModel::fit(docs, cfg(AnalyzerKind::CharWb, 1, 4));
  for (int i = 0; i < 50; ++i) {
    const auto v = model.transform(testing::fuzz_words(rng, U"abcdوزx", 6));
    CHECK(v.well_formed());
    if (!v.empty()) CHECK(v.squared_norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("weighted union") {
  const std::vector<std::string> docs{"ab cd", "cd ef", "ab"};
  const std::array<AnalyzerConfig, 3> configs{cfg(AnalyzerKind::Word, 1, 1), cfg(AnalyzerKind::Char, 1, 2),
                                              cfg(AnalyzerKind::CharWb, 2, 3)};
  const auto unit = UnionModel::fit(docs, configs, {1.0, 1.0, 1.0});
  const auto half = UnionModel::fit(docs, configs, {0.5, 1.0, 1.0});
  CHECK(unit.dimension() == unit.blocks()[0].dimension() + unit.blocks()[1].dimension() + unit.blocks()[2].dimension());
  CHECK(unit.block_offset(1) == unit.blocks()[0].dimension());

  const auto u = unit.transform("ab cd");
  const auto h = half.transform("ab cd");
  REQUIRE(u.entries.size() == h.entries.size());
  const std::size_t first_char = unit.block_offset(1);
  double block_norms[3] = {0, 0, 0};
  for (std::size_t i = 0; i < u.entries.size(); ++i) {
    CHECK(u.entries[i].first == h.entries[i].first);
    if (u.entries[i].first < first_char) {
      CHECK(h.entries[i].second == 0.5 * u.entries[i].second);
    } else {
      CHECK(h.entries[i].second == u.entries[i].second);
    }
    const std::size_t block = u.entries[i].first < first_char ? 0 : u.entries[i].first < unit.block_offset(2) ? 1 : 2;
    block_norms[block] += h.entries[i].second * h.entries[i].second;
  }
  CHECK(std::sqrt(block_norms[0]) == doctest::Approx(0.5));
  CHECK(std::sqrt(block_norms[1]) == doctest::Approx(1.0));
  CHECK(std::sqrt(block_norms[2]) == doctest::Approx(1.0));

  // Unit weights concatenate the block vectors unchanged.
  const auto word_only = unit.blocks()[0].transform("ab cd");
  for (std::size_t i = 0; i < word_only.entries.size(); ++i) CHECK(u.entries[i] == word_only.entries[i]);

  const auto empty = unit.transform("");
  CHECK(empty.empty());
  CHECK(empty.dimension == unit.dimension());
}

TEST_CASE("union preconditions") {
  const std::vector<std::string> docs{"ab"};
  const std::array<AnalyzerConfig, 3> configs{cfg(AnalyzerKind::Word, 1, 1), cfg(AnalyzerKind::Char, 1, 2),
                                              cfg(AnalyzerKind::CharWb, 2, 3)};
  CHECK_THROWS_AS(UnionModel::fit(docs, configs, {0.0, 1.0, 1.0}), Error);
  CHECK_THROWS_AS(UnionModel::fit(docs, configs, {1.0, 1.5, 1.0}), Error);
  auto swapped = configs;
  std::swap(swapped[0], swapped[1]);
  CHECK_THROWS_AS(UnionModel::fit(docs, swapped, {1.0, 1.0, 1.0}), Error);
}

TEST_CASE("model persistence") {
  const std::vector<std::string> docs{"ab cd", "cd ef", "مرحبا بكم"};
  const std::array<AnalyzerConfig, 3> configs{cfg(AnalyzerKind::Word, 1, 2, 5), cfg(AnalyzerKind::Char, 1, 2),
                                              cfg(AnalyzerKind::CharWb, 2, 3)};
  const auto model = UnionModel::fit(docs, configs, {0.75, 1.0, 0.5});
  io::BinaryWriter w;
  model.save(w);
  io::BinaryReader r(w.bytes());
  const auto back = UnionModel::load(r);
  CHECK(back == model);
  CHECK(back.transform("ab مرحبا") == model.transform("ab مرحبا"));
}

TEST_CASE("idf is at least one and fitting is deterministic") {
  Rng rng(37);
  std::vector<std::string> docs;
  for (int d = 0; d < 8; ++d) docs.push_back(testing::fuzz_words(rng, U"abcdeسش", 10) + " q");
  const auto a = TfidfModel::fit(docs, cfg(AnalyzerKind::Char, 1, 3));
  const auto b = TfidfModel::fit(docs, cfg(AnalyzerKind::Char, 1, 3));
  CHECK(a == b);
  for (double v : a.idf()) CHECK(v >= 1.0);
}
