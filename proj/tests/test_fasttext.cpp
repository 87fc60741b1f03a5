#include <cmath>

#include "doctest.h"

#include "adi/error.hpp"
#include "adi/fasttext.hpp"
#include "fasttext_fixtures.hpp"

using namespace adi;
using namespace adi::fasttext;

TEST_CASE("hash values") {
  // Reference FNV-1a 32-bit values.
  CHECK(fnv1a32("") == 2166136261u);
  CHECK(fnv1a32("a") == 3826002220u);
  CHECK(fnv1a32("foobar") == 3214735720u);
}

TEST_CASE("subword grams and ids") {
  FastTextParams p;
  p.subword_min = 3;
  p.subword_max = 3;
  CHECK(subword_grams("ab", p) == std::vector<std::string>{"<ab", "ab>"});
  const auto ids = subword_ids("ab", p, 0);
  CHECK(ids == std::vector<std::uint32_t>{209508u, 1241756u});
  CHECK(subword_ids("ab", p, 0) == ids);
  CHECK(subword_ids("ab", p, 10) == std::vector<std::uint32_t>{209518u, 1241766u});
  CHECK(subword_ids("مرحبا", p, 0)[0] == 1144870u);
  CHECK(subword_ids("مرحبا", p, 0)[1] == 1787695u);
  p.subword_min = 4;
  CHECK(subword_grams("ab", p).empty());
}

TEST_CASE("vocabulary order and threshold") {
  const std::vector<std::string> texts{"b a b", "c b a"};
  const auto v = Vocabulary::build(texts, 1);
  CHECK(v.words() == std::vector<std::string>{"b", "a", "c"});
  CHECK(v.counts() == std::vector<std::uint64_t>{3, 2, 1});
  CHECK(Vocabulary::build(texts, 2).size() == 2);
  CHECK(v.find("c") == 2);
  CHECK(v.find("zz") == -1);
}

TEST_CASE("lazy rows read as their initial value") {
  InputMatrix m(2'000'100, 8, 5);
  std::vector<double> a(8), b(8);
  m.initial_row(1'999'999, a);
  m.read_row(1'999'999, b);
  CHECK(a == b);
  for (double x : a) CHECK(std::abs(x) <= 1.0 / 8);
  CHECK(m.materialized() == 0);
  auto row = m.row_mut(1'999'999);
  CHECK(std::vector<double>(row.begin(), row.end()) == a);
  row[0] = 42.0;
  m.read_row(1'999'999, b);
  CHECK(b[0] == 42.0);
  CHECK(m.materialized() == 1);
  InputMatrix other(2'000'100, 8, 6);
  other.initial_row(1'999'999, b);
  CHECK(a != b);
}

TEST_CASE("sentence vectors") {
  FastTextParams p;
  p.dim = 6;
  p.subword_min = 1;
  p.subword_max = 0;
  p.epochs = 0;
  const std::vector<std::string> texts{"aa bb", "bb cc"};
  const auto model = train_skipgram(texts, p);
  const auto& emb = model.input;
  std::vector<double> row(6);
  emb.matrix().read_row(static_cast<std::uint32_t>(emb.vocab().find("aa")), row);
  CHECK(emb.sentence_vector("aa") == row);
  CHECK(emb.sentence_vector("") == std::vector<double>(6, 0.0));
  CHECK(emb.sentence_vector("unseen") == std::vector<double>(6, 0.0));
  const auto feats = extract_features(model, std::vector<std::string>{"aa bb", "cc", "aa bb"});
  REQUIRE(feats.size() == 3);
  CHECK(feats[0].size() == 6);
  CHECK(feats[0] == feats[2]);
}

TEST_CASE("sentence vector is a mean of word means") {
  FastTextParams p;
  p.dim = 4;
  p.subword_min = 2;
  p.subword_max = 3;
  p.bucket_count = 1000;
  p.epochs = 0;
  const auto model = train_skipgram(std::vector<std::string>{"abc de"}, p);
  const auto& emb = model.input;
  std::vector<double> w1(4), w2(4);
  REQUIRE(emb.word_vector("abc", w1));
  REQUIRE(emb.word_vector("xy", w2));
  const auto s = emb.sentence_vector("abc xy");
  for (int k = 0; k < 4; ++k) CHECK(s[k] == doctest::Approx((w1[k] + w2[k]) / 2).epsilon(1e-15));
}

TEST_CASE("zero epochs leaves the initialization") {
  FastTextParams p;
  p.dim = 5;
  p.epochs = 0;
  p.bucket_count = 100;
  const auto model = train_skipgram(std::vector<std::string>{"a b c", "b c d"}, p);
  CHECK(model.input.matrix().materialized() == 0);
  for (double x : model.output) CHECK(x == 0.0);
}

TEST_CASE("skipgram separates token families") {
  const auto r = fixtures::skipgram_family_similarity(0);
  CHECK(r.intra > r.inter);
}

TEST_CASE("supervised toy problem") {
  CHECK(fixtures::supervised_toy_accuracy(25, 0) >= 0.95);
  const double untrained = fixtures::supervised_toy_accuracy(0, 0);
  CHECK(untrained >= 0.35);
  CHECK(untrained <= 0.65);
}

TEST_CASE("analytic gradient matches finite differences") {
  const auto worst = fixtures::max_gradient_relative_error(20, 1);
  CHECK(worst <= 1e-4);
}

TEST_CASE("fixed seed reproduces the model bit for bit") {
  CHECK(fixtures::training_is_reproducible(3));
}

TEST_CASE("training errors") {
  FastTextParams p;
  CHECK_THROWS_AS(train_skipgram(std::vector<std::string>{}, p), Error);
  CHECK_THROWS_AS(train_supervised(std::vector<std::string>{"a", "b"}, std::vector<int>{0}, p), Error);
  CHECK_THROWS_AS(train_supervised(std::vector<std::string>{"a", "b"}, std::vector<int>{0, 0}, p), Error);
  p.dim = 0;
  CHECK_THROWS_AS(p.validate(), Error);
}

TEST_CASE("model persistence") {
  FastTextParams p;
  p.dim = 8;
  p.epochs = 3;
  p.bucket_count = 5000;
  const std::vector<std::string> texts{"aa bb aa", "cc dd", "aa dd"};
  const auto model = train_supervised(texts, std::vector<int>{0, 1, 0}, p);
  io::BinaryWriter w;
  model.save(w);
  io::BinaryReader r(w.bytes());
  const auto back = SupervisedTextModel::load(r);
  CHECK(back.input == model.input);
  CHECK(back.label_matrix == model.label_matrix);
  CHECK(back.scores("aa zz") == model.scores("aa zz"));

  const auto emb = train_skipgram(texts, p);
  io::BinaryWriter w2;
  emb.save(w2);
  io::BinaryReader r2(w2.bytes());
  const auto emb_back = EmbeddingModel::load(r2);
  CHECK(emb_back.input == emb.input);
  CHECK(emb_back.output == emb.output);
}

TEST_CASE("mean pooling properties") {
  FastTextParams p;
  p.dim = 8;
  p.epochs = 2;
  p.bucket_count = 3000;
  const std::vector<std::string> texts{"aa bb cc", "bb dd", "cc aa ee"};
  const auto model = train_skipgram(texts, p);
  const auto& emb = model.input;
  const auto ab = emb.sentence_vector("aa bb");
  const auto ba = emb.sentence_vector("bb aa");
  const auto a = emb.sentence_vector("aa");
  const auto b = emb.sentence_vector("bb");
  for (int k = 0; k < 8; ++k) {
    CHECK(ab[k] == doctest::Approx(ba[k]).epsilon(1e-14));
    CHECK(ab[k] == doctest::Approx((a[k] + b[k]) / 2).epsilon(1e-14));
  }
  const auto f = extract_features(model, std::vector<std::string>{"aa", "bb dd"});
  const auto g = extract_features(model, std::vector<std::string>{"bb dd", "aa"});
  CHECK(f[0] == g[1]);
  CHECK(f[1] == g[0]);
}

TEST_CASE("training lowers the loss and keeps values finite") {
  FastTextParams p;
  p.dim = 10;
  p.epochs = 15;
  p.bucket_count = 5000;
  std::vector<std::string> texts;
  std::vector<int> labels;
  for (int i = 0; i < 40; ++i) {
    texts.push_back(i % 2 ? "sun sky sea star" : "dog cat cow hen");
    labels.push_back(i % 3);
  }
  const auto emb = train_skipgram(texts, p);
  REQUIRE(emb.epoch_loss.size() == 15);
  CHECK(emb.epoch_loss.back() <= emb.epoch_loss.front());
  const auto sup = train_supervised(texts, labels, p);
  CHECK(sup.epoch_loss.back() <= sup.epoch_loss.front());
  const auto scores = sup.scores("sun dog unknown");
  CHECK(scores.size() == 3);
  for (double s : scores) CHECK(std::isfinite(s));
  for (double x : emb.output) CHECK(std::isfinite(x));
}
