#pragma once

#include <span>
#include <utility>
#include <vector>

namespace setconv {

/// Norm on R^d: Euclidean, max (infinity), or a block product norm
/// max_i || x_i ||_i over consecutive coordinate blocks.
/// Euclidean and max apply to any dimension; product pins the dimension to
/// the sum of its block sizes.
struct NormSpec {
  enum class Kind { Euclidean, Max, Product };

  Kind kind = Kind::Euclidean;
  std::vector<std::pair<int, NormSpec>> blocks;  // Product only

  static NormSpec euclidean() { return NormSpec{}; }
  static NormSpec max_norm() { return NormSpec{Kind::Max, {}}; }
  static NormSpec product(std::vector<std::pair<int, NormSpec>> blocks);

  /// Sum of block sizes for product norms, -1 (any) otherwise.
  int dimension() const;

  double operator()(std::span<const double> v) const;
  double distance(std::span<const double> a, std::span<const double> b) const;

  /// Throws ValidationError unless the norm accepts dimension d.
  void check_dimension(int d, const char* where) const;
};

}  // namespace setconv
