#include "setconv/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "setconv/errors.hpp"

namespace setconv {

GridSpec GridSpec::uniform(double lo, double hi, int steps, int dim) {
  GridSpec g;
  g.axes.assign(static_cast<size_t>(dim), Axis{lo, hi, steps});
  g.validate("GridSpec::uniform");
  return g;
}

void GridSpec::validate(const char* where) const {
  if (axes.empty()) throw ValidationError(std::string(where) + ": grid has no axes");
  for (const Axis& a : axes) {
    if (!(a.lo < a.hi)) throw ValidationError(std::string(where) + ": axis needs lo < hi");
    if (a.steps < 1) throw ValidationError(std::string(where) + ": axis needs steps >= 1");
  }
}

size_t GridSpec::point_count() const {
  size_t n = 1;
  for (const Axis& a : axes) n *= static_cast<size_t>(a.steps) + 1;
  return n;
}

double GridSpec::spacing(int axis) const {
  const Axis& a = axes.at(static_cast<size_t>(axis));
  return (a.hi - a.lo) / a.steps;
}

double GridSpec::max_spacing() const {
  double h = 0.0;
  for (int i = 0; i < dim(); ++i) h = std::max(h, spacing(i));
  return h;
}

void GridSpec::point(size_t flat, std::span<double> out) const {
  for (int i = dim() - 1; i >= 0; --i) {
    const Axis& a = axes[static_cast<size_t>(i)];
    const size_t n = static_cast<size_t>(a.steps) + 1;
    const size_t k = flat % n;
    flat /= n;
    out[static_cast<size_t>(i)] =
        k == static_cast<size_t>(a.steps) ? a.hi : a.lo + static_cast<double>(k) * (a.hi - a.lo) / a.steps;
  }
}

GridSpec GridSpec::refined(int factor) const {
  if (factor < 1) throw ValidationError("GridSpec::refined: factor must be >= 1");
  GridSpec g = *this;
  for (Axis& a : g.axes) a.steps *= factor;
  return g;
}

PointCloud grid_cloud(const GridSpec& grid) {
  grid.validate("grid_cloud");
  PointCloud out(grid.dim());
  std::vector<double> buf(static_cast<size_t>(grid.dim()));
  const size_t n = grid.point_count();
  for (size_t i = 0; i < n; ++i) {
    grid.point(i, buf);
    out.push_back(buf);
  }
  return out;
}

void for_each_grid_point(const GridSpec& grid,
                         const std::function<void(std::span<const double>)>& fn) {
  grid.validate("for_each_grid_point");
  std::vector<double> buf(static_cast<size_t>(grid.dim()));
  const size_t n = grid.point_count();
  for (size_t i = 0; i < n; ++i) {
    grid.point(i, buf);
    fn(buf);
  }
}

}  // namespace setconv
