#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace adi {

using DenseVector = std::vector<double>;

// Sorted (index, value) pairs over a fixed dimension. Indices are strictly
// increasing and values are finite and non-zero.
struct SparseVector {
  std::size_t dimension = 0;
  std::vector<std::pair<std::uint32_t, double>> entries;

  static SparseVector from_dense(std::span<const double> dense);
  DenseVector to_dense() const;

  double dot(std::span<const double> dense) const;
  double squared_norm() const;
  bool empty() const { return entries.empty(); }
  // Checks the ordering/finiteness invariants.
  bool well_formed() const;

  bool operator==(const SparseVector&) const = default;
};

}  // namespace adi
