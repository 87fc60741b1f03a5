#include <cmath>

#include "doctest.h"

#include "adi/error.hpp"
#include "adi/linear_svc.hpp"
#include "svc_fixtures.hpp"

using namespace adi;
using namespace adi::svc;

namespace {

SparseVector dense(std::vector<double> v) { return SparseVector::from_dense(v); }

std::vector<SparseVector> clusters(Rng& rng, std::vector<int>& labels) {
  const double centers[3][2] = {{0, 5}, {5, -3}, {-5, -3}};
  std::vector<SparseVector> x;
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < 30; ++i) {
      x.push_back(dense({centers[c][0] + uniform_unit(rng) * 2 - 1, centers[c][1] + uniform_unit(rng) * 2 - 1}));
      labels.push_back(c);
    }
  }
  return x;
}

}  // namespace

TEST_CASE("separable pair reaches the margin") {
  CHECK(fixtures::separable_margin() >= 1.0 - 1e-6);
}

TEST_CASE("solutions match the QP oracle") {
  const auto r = fixtures::compare_with_oracle(10, 41);
  CHECK(r.worst_relative <= 1e-4);
  CHECK(r.monotone);
  CHECK(r.converged);
}

TEST_CASE("dual objective never decreases") {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const auto inst = fixtures::random_instance(rng);
    SvcParams p;
    p.C = inst.C;
    p.seed = static_cast<std::uint64_t>(t);
    const auto s = train_binary(inst.sparse, inst.targets, p);
    CHECK(fixtures::dual_is_monotone(s));
    CHECK(s.dual_history.size() == static_cast<std::size_t>(s.sweeps));
    // Weak duality.
    CHECK(s.dual_history.back() <= primal_objective(inst.sparse, inst.targets, s, p.C) + 1e-9);
    for (double a : s.alphas) {
      CHECK(a >= 0.0);
      CHECK(a <= p.C);
    }
  }
}

TEST_CASE("binary errors") {
  const std::vector<SparseVector> x{dense({1.0}), dense({2.0})};
  CHECK_THROWS_AS(train_binary(x, std::vector<int>{1, 1}, SvcParams{}), Error);
  CHECK_THROWS_AS(train_binary(x, std::vector<int>{1}, SvcParams{}), Error);
  CHECK_THROWS_AS(train_binary(x, std::vector<int>{1, 0}, SvcParams{}), Error);
  const std::vector<SparseVector> mixed{dense({1.0}), dense({1.0, 2.0})};
  CHECK_THROWS_AS(train_binary(mixed, std::vector<int>{1, -1}, SvcParams{}), Error);
  SvcParams bad;
  bad.C = -1;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("one-vs-rest separates clusters") {
  Rng rng(2);
  std::vector<int> labels;
  const auto x = clusters(rng, labels);
  const auto model = train_ovr(x, labels, 3, SvcParams{});
  int hits = 0;
  for (std::size_t i = 0; i < x.size(); ++i) hits += model.predict(x[i]) == labels[i] ? 1 : 0;
  CHECK(hits == static_cast<int>(x.size()));
  const auto parallel = train_ovr(x, labels, 3, SvcParams{}, 3);
  CHECK(parallel == model);
}

TEST_CASE("two classes give opposite hyperplanes") {
  Rng rng(4);
  auto inst = fixtures::random_instance(rng);
  std::vector<int> labels;
  for (int y : inst.targets) labels.push_back(y > 0 ? 1 : 0);
  const auto model = train_ovr(inst.sparse, labels, 2, SvcParams{});
  const auto w0 = model.weights(0);
  const auto w1 = model.weights(1);
  for (std::size_t k = 0; k < w0.size(); ++k) CHECK(w0[k] == -w1[k]);
  CHECK(model.bias(0) == -model.bias(1));
  const auto binary = train_binary(inst.sparse, inst.targets, SvcParams{});
  for (const auto& x : inst.sparse) {
    const bool positive = x.dot(binary.weights) + binary.bias > 0;
    const auto d = model.decision_values(x);
    if (d[0] != d[1]) CHECK((model.predict(x) == 1) == positive);
  }
}

TEST_CASE("ovr errors") {
  const std::vector<SparseVector> x{dense({1.0}), dense({2.0})};
  CHECK_THROWS_AS(train_ovr(x, std::vector<int>{0, 2}, 3, SvcParams{}), Error);
  CHECK_THROWS_AS(train_ovr(x, std::vector<int>{0, 3}, 3, SvcParams{}), Error);
}

TEST_CASE("argmax and prediction") {
  CHECK(argmax(std::vector<double>{0.2, 0.9, -1}) == 1);
  CHECK(argmax(std::vector<double>{0.5, 0.5}) == 0);
  LinearSvcModel m(3, 2, SvcParams{});
  m.bias(0) = -1;
  m.bias(1) = 2;
  m.bias(2) = 0.5;
  CHECK(m.predict(dense({0.0, 0.0})) == 1);
  CHECK_THROWS_AS(m.decision_values(dense({1.0, 2.0, 3.0})), Error);
}

TEST_CASE("model persistence") {
  Rng rng(6);
  std::vector<int> labels;
  const auto x = clusters(rng, labels);
  const auto model = train_ovr(x, labels, 3, SvcParams{});
  io::BinaryWriter w;
  model.save(w);
  io::BinaryReader r(w.bytes());
  CHECK(LinearSvcModel::load(r) == model);
}

TEST_CASE("duality gap at termination") {
  Rng rng(15);
  for (int t = 0; t < 20; ++t) {
    const auto inst = fixtures::random_instance(rng);
    SvcParams p;
    p.C = inst.C;
    const auto s = train_binary(inst.sparse, inst.targets, p);
    REQUIRE(s.converged);
    const double dual = s.dual_history.back();
    CHECK(primal_objective(inst.sparse, inst.targets, s, p.C) - dual < 1e-3 * (1 + std::abs(dual)));
  }
}

TEST_CASE("predictions are scale invariant and deterministic") {
  Rng rng(19);
  std::vector<int> labels;
  const auto x = clusters(rng, labels);
  SvcParams p;
  p.C = 0.01;
  const auto model = train_ovr(x, labels, 3, p);
  CHECK(train_ovr(x, labels, 3, p) == model);
  auto scaled = model;
  for (std::size_t c = 0; c < 3; ++c) {
    for (auto& w : scaled.weights(c)) w *= 2;
    scaled.bias(c) *= 2;
  }
  for (const auto& v : x) CHECK(scaled.predict(v) == model.predict(v));
}
