#pragma once

#include <functional>
#include <span>
#include <vector>

#include "setconv/point_cloud.hpp"

namespace setconv {

/// Uniform rectangular grid. Each axis spans [lo, hi] with `steps` cells,
/// i.e. steps+1 points; spacing = (hi - lo) / steps.
struct GridSpec {
  struct Axis {
    double lo = 0.0;
    double hi = 1.0;
    int steps = 1;
  };

  std::vector<Axis> axes;

  static GridSpec uniform(double lo, double hi, int steps, int dim = 1);

  int dim() const { return static_cast<int>(axes.size()); }
  size_t point_count() const;
  double spacing(int axis) const;
  double max_spacing() const;

  /// Point for a row-major flat index (last axis fastest).
  void point(size_t flat, std::span<double> out) const;

  /// Grid scaled about the axis midpoints: spacing divided by `factor`
  /// (same box, factor * steps cells per axis).
  GridSpec refined(int factor) const;

  void validate(const char* where) const;
};

/// All grid points as a cloud (row-major order).
PointCloud grid_cloud(const GridSpec& grid);

/// Calls fn on every grid point in row-major order.
void for_each_grid_point(const GridSpec& grid,
                         const std::function<void(std::span<const double>)>& fn);

}  // namespace setconv
