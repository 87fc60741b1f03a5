#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "adi/serialize.hpp"
#include "adi/sparse.hpp"

// L2-regularized L1-hinge linear SVM solved in the dual by coordinate
// descent, with a one-vs-rest multiclass wrapper. The bias is learned by
// augmenting every example with a constant-1 coordinate.
namespace adi::svc {

struct SvcParams {
  double C = 1.0;
  double tolerance = 1e-4;
  int max_sweeps = 1000;
  std::uint64_t seed = 0;

  void validate() const;
  bool operator==(const SvcParams&) const = default;
};

struct BinarySolution {
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<double> alphas;
  // Dual objective sum(alpha) - 0.5 |w|^2 after every sweep.
  std::vector<double> dual_history;
  int sweeps = 0;
  bool converged = false;
};

// targets are +1 / -1. Throws SingleSign, DimensionMismatch, LengthMismatch.
BinarySolution train_binary(std::span<const SparseVector> features, std::span<const int> targets,
                            const SvcParams& params);

double primal_objective(std::span<const SparseVector> features, std::span<const int> targets,
                        const BinarySolution& solution, double C);

class LinearSvcModel {
 public:
  LinearSvcModel() = default;
  LinearSvcModel(std::size_t class_count, std::size_t dimension, SvcParams params);

  std::size_t class_count() const { return biases_.size(); }
  std::size_t dimension() const { return dimension_; }
  const SvcParams& params() const { return params_; }

  std::span<double> weights(std::size_t c);
  std::span<const double> weights(std::size_t c) const;
  double& bias(std::size_t c) { return biases_[c]; }
  double bias(std::size_t c) const { return biases_[c]; }

  // w_c . x + b_c for every class. Throws DimensionMismatch.
  std::vector<double> decision_values(const SparseVector& x) const;
  // argmax of decision values, ties to the lowest class index.
  int predict(const SparseVector& x) const;

  void save(io::BinaryWriter& w) const;
  static LinearSvcModel load(io::BinaryReader& r);

  bool operator==(const LinearSvcModel&) const = default;

 private:
  std::size_t dimension_ = 0;
  SvcParams params_;
  std::vector<double> weight_matrix_;  // class_count x dimension
  std::vector<double> biases_;
};

// Class c vs rest for every c. `workers` > 1 solves classes concurrently;
// results do not depend on it. Throws MissingClass(c), IndexOutOfRange.
LinearSvcModel train_ovr(std::span<const SparseVector> features, std::span<const int> labels, std::size_t class_count,
                         const SvcParams& params, unsigned workers = 1);

// Tie-breaking argmax used for every multiclass decision in the toolkit.
int argmax(std::span<const double> values);

}  // namespace adi::svc
