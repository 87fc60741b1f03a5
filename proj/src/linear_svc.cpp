#include "adi/linear_svc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "adi/error.hpp"
#include "adi/parallel.hpp"
#include "adi/random.hpp"

namespace adi {

unsigned default_workers() {
  if (const char* env = std::getenv("ADI_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (...) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace adi

namespace adi::svc {

void SvcParams::validate() const {
  if (!(C > 0.0) || !std::isfinite(C)) throw Error(ErrorCode::InvalidArgument, "svc: C must be positive");
  if (!(tolerance > 0.0)) throw Error(ErrorCode::InvalidArgument, "svc: tolerance must be positive");
  if (max_sweeps <= 0) throw Error(ErrorCode::InvalidArgument, "svc: max_sweeps must be positive");
}

namespace {

// Weights are stored augmented: [w_0 .. w_{d-1}, bias].
double augmented_dot(const SparseVector& x, const std::vector<double>& w) {
  return x.dot(w) + w.back();
}

void augmented_axpy(double a, const SparseVector& x, std::vector<double>& w) {
  for (const auto& [i, v] : x.entries) w[i] += a * v;
  w.back() += a;
}

// w = sum_i alpha_i y_i [x_i, 1], accumulated in extended precision.
std::vector<long double> exact_weights(std::span<const SparseVector> features, std::span<const int> targets,
                                       const std::vector<double>& alphas, std::size_t dim) {
  std::vector<long double> w(dim + 1, 0.0L);
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (alphas[i] == 0.0) continue;
    const long double a = static_cast<long double>(alphas[i]) * targets[i];
    for (const auto& [k, v] : features[i].entries) w[k] += a * v;
    w.back() += a;
  }
  return w;
}

double dual_objective(const std::vector<double>& alphas, const std::vector<long double>& w) {
  long double sum_alpha = 0.0L;
  for (double a : alphas) sum_alpha += a;
  long double norm2 = 0.0L;
  for (long double x : w) norm2 += x * x;
  return static_cast<double>(sum_alpha - 0.5L * norm2);
}

void check_dimensions(std::span<const SparseVector> features) {
  for (const auto& x : features) {
    if (x.dimension != features.front().dimension) {
      throw Error(ErrorCode::DimensionMismatch, "svc: examples have differing feature dimensions");
    }
  }
}

}  // namespace

BinarySolution train_binary(std::span<const SparseVector> features, std::span<const int> targets,
                            const SvcParams& params) {
  params.validate();
  if (features.size() != targets.size()) throw Error(ErrorCode::LengthMismatch, "svc: features and targets differ in length");
  bool has_pos = false, has_neg = false;
  for (int y : targets) {
    if (y == 1) has_pos = true;
    else if (y == -1) has_neg = true;
    else throw Error(ErrorCode::InvalidArgument, "svc: targets must be +1 or -1");
  }
  if (!has_pos || !has_neg) throw Error(ErrorCode::SingleSign, "svc: need at least one example of each sign");
  check_dimensions(features);

  const std::size_t n = features.size();
  const std::size_t dim = features.front().dimension;
  BinarySolution sol;
  std::vector<double> w(dim + 1, 0.0);
  sol.alphas.assign(n, 0.0);
  std::vector<double> qdiag(n);
  for (std::size_t i = 0; i < n; ++i) qdiag[i] = features[i].squared_norm() + 1.0;

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  Rng rng(params.seed);
  const double C = params.C;

  for (int sweep = 0; sweep < params.max_sweeps; ++sweep) {
    shuffle(order, rng);
    double max_violation = 0.0;
    for (std::size_t i : order) {
      const double y = targets[i];
      const double G = y * augmented_dot(features[i], w) - 1.0;
      double& alpha = sol.alphas[i];
      double pg = G;
      if (alpha <= 0.0) pg = std::min(G, 0.0);
      else if (alpha >= C) pg = std::max(G, 0.0);
      max_violation = std::max(max_violation, std::fabs(pg));
      if (pg == 0.0) continue;
      const double old = alpha;
      alpha = std::clamp(alpha - G / qdiag[i], 0.0, C);
      const double delta = (alpha - old) * y;
      if (delta != 0.0) augmented_axpy(delta, features[i], w);
    }
    sol.dual_history.push_back(dual_objective(sol.alphas, exact_weights(features, targets, sol.alphas, dim)));
    sol.sweeps = sweep + 1;
    if (max_violation < params.tolerance) {
      sol.converged = true;
      break;
    }
  }
  const auto exact = exact_weights(features, targets, sol.alphas, dim);
  for (std::size_t k = 0; k <= dim; ++k) w[k] = static_cast<double>(exact[k]);
  sol.bias = w.back();
  w.pop_back();
  sol.weights = std::move(w);
  return sol;
}

double primal_objective(std::span<const SparseVector> features, std::span<const int> targets,
                        const BinarySolution& solution, double C) {
  double obj = solution.bias * solution.bias;
  for (double x : solution.weights) obj += x * x;
  obj *= 0.5;
  for (std::size_t i = 0; i < features.size(); ++i) {
    const double margin = targets[i] * (features[i].dot(solution.weights) + solution.bias);
    obj += C * std::max(0.0, 1.0 - margin);
  }
  return obj;
}

LinearSvcModel::LinearSvcModel(std::size_t class_count, std::size_t dimension, SvcParams params)
    : dimension_(dimension), params_(params), weight_matrix_(class_count * dimension, 0.0), biases_(class_count, 0.0) {}

std::span<double> LinearSvcModel::weights(std::size_t c) {
  return std::span<double>(weight_matrix_).subspan(c * dimension_, dimension_);
}

std::span<const double> LinearSvcModel::weights(std::size_t c) const {
  return std::span<const double>(weight_matrix_).subspan(c * dimension_, dimension_);
}

std::vector<double> LinearSvcModel::decision_values(const SparseVector& x) const {
  if (x.dimension != dimension_) {
    throw Error(ErrorCode::DimensionMismatch, "svc: feature dimension " + std::to_string(x.dimension) +
                                                  " does not match model dimension " + std::to_string(dimension_));
  }
  std::vector<double> out(class_count());
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = x.dot(weights(c)) + biases_[c];
  return out;
}

int argmax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return static_cast<int>(best);
}

int LinearSvcModel::predict(const SparseVector& x) const { return argmax(decision_values(x)); }

void LinearSvcModel::save(io::BinaryWriter& w) const {
  w.f64(params_.C);
  w.f64(params_.tolerance);
  w.u32(static_cast<std::uint32_t>(params_.max_sweeps));
  w.u64(params_.seed);
  w.u64(class_count());
  w.u64(dimension_);
  for (double x : weight_matrix_) w.f64(x);
  for (double b : biases_) w.f64(b);
}

LinearSvcModel LinearSvcModel::load(io::BinaryReader& r) {
  SvcParams p;
  p.C = r.f64();
  p.tolerance = r.f64();
  p.max_sweeps = static_cast<int>(r.u32());
  p.seed = r.u64();
  const std::size_t at = r.offset();
  const std::uint64_t classes = r.count(8);
  const std::uint64_t dim = r.u64();
  if (dim > r.remaining() / 8 || (classes != 0 && dim > r.remaining() / 8 / classes)) {
    throw Error(ErrorCode::CorruptFile, "svc model shape exceeds file size", static_cast<std::int64_t>(at));
  }
  LinearSvcModel m;
  m.params_ = p;
  m.dimension_ = dim;
  for (std::uint64_t i = 0; i < classes * dim; ++i) m.weight_matrix_.push_back(r.f64());
  for (std::uint64_t c = 0; c < classes; ++c) m.biases_.push_back(r.f64());
  return m;
}

LinearSvcModel train_ovr(std::span<const SparseVector> features, std::span<const int> labels, std::size_t class_count,
                         const SvcParams& params, unsigned workers) {
  params.validate();
  if (class_count < 2) throw Error(ErrorCode::InvalidArgument, "svc: need at least two classes");
  if (features.size() != labels.size()) throw Error(ErrorCode::LengthMismatch, "svc: features and labels differ in length");
  std::vector<std::size_t> per_class(class_count, 0);
  for (int y : labels) {
    if (y < 0 || static_cast<std::size_t>(y) >= class_count) {
      throw Error(ErrorCode::IndexOutOfRange, "svc: label index " + std::to_string(y) + " out of range");
    }
    ++per_class[static_cast<std::size_t>(y)];
  }
  for (std::size_t c = 0; c < class_count; ++c) {
    if (per_class[c] == 0) {
      throw Error(ErrorCode::MissingClass, "svc: class " + std::to_string(c) + " has no examples",
                  static_cast<std::int64_t>(c));
    }
  }
  check_dimensions(features);

  LinearSvcModel model(class_count, features.front().dimension, params);
  parallel_for(class_count, workers, [&](std::size_t c) {
    std::vector<int> targets(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) targets[i] = static_cast<std::size_t>(labels[i]) == c ? 1 : -1;
    // Same shuffle seed for every class: a 2-class problem then yields
    // exactly negated hyperplanes.
    BinarySolution sol = train_binary(features, targets, params);
    std::copy(sol.weights.begin(), sol.weights.end(), model.weights(c).begin());
    model.bias(c) = sol.bias;
  });
  return model;
}

}  // namespace adi::svc
