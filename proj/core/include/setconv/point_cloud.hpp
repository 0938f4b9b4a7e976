#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "setconv/norm.hpp"

namespace setconv {

/// Finite list of points in R^dim, flat row-major storage. Coordinates must
/// be finite; infinities and NaN are rejected at insertion.
class PointCloud {
 public:
  PointCloud() = default;
  explicit PointCloud(int dim);

  static PointCloud from_points(int dim, std::initializer_list<std::initializer_list<double>> pts);
  static PointCloud from_points(int dim, const std::vector<std::vector<double>>& pts);

  int dim() const { return dim_; }
  size_t size() const { return dim_ > 0 ? xs_.size() / static_cast<size_t>(dim_) : 0; }
  bool empty() const { return xs_.empty(); }

  std::span<const double> operator[](size_t i) const {
    return {xs_.data() + i * static_cast<size_t>(dim_), static_cast<size_t>(dim_)};
  }

  void push_back(std::span<const double> p);
  void push_back(std::initializer_list<double> p);

  /// Removes exact duplicates, keeping first occurrences in order.
  PointCloud deduplicated() const;

  const std::vector<double>& raw() const { return xs_; }

 private:
  int dim_ = 0;
  std::vector<double> xs_;
};

/// Closed ball under a norm.
struct Ball {
  std::vector<double> center;
  double radius = 0.0;
  NormSpec norm;

  bool contains(std::span<const double> x) const;
};

}  // namespace setconv
