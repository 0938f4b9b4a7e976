#include "setconv/point_cloud.hpp"

#include <cmath>
#include <cstring>
#include <set>
#include <string>

#include "setconv/errors.hpp"

namespace setconv {

PointCloud::PointCloud(int dim) : dim_(dim) {
  if (dim <= 0) throw ValidationError("PointCloud: dimension must be positive");
}

PointCloud PointCloud::from_points(int dim,
                                   std::initializer_list<std::initializer_list<double>> pts) {
  PointCloud c(dim);
  for (const auto& p : pts) c.push_back(std::span<const double>(p.begin(), p.size()));
  return c;
}

PointCloud PointCloud::from_points(int dim, const std::vector<std::vector<double>>& pts) {
  PointCloud c(dim);
  for (const auto& p : pts) c.push_back(std::span<const double>(p.data(), p.size()));
  return c;
}

void PointCloud::push_back(std::span<const double> p) {
  if (dim_ == 0) throw ValidationError("PointCloud: push into default-constructed cloud");
  if (static_cast<int>(p.size()) != dim_)
    throw ValidationError("PointCloud: point dimension " + std::to_string(p.size()) +
                          " does not match cloud dimension " + std::to_string(dim_));
  for (double v : p)
    if (!std::isfinite(v)) throw ValidationError("PointCloud: coordinates must be finite");
  xs_.insert(xs_.end(), p.begin(), p.end());
}

void PointCloud::push_back(std::initializer_list<double> p) {
  push_back(std::span<const double>(p.begin(), p.size()));
}

PointCloud PointCloud::deduplicated() const {
  if (empty()) return *this;
  PointCloud out(dim_);
  std::set<std::vector<double>> seen;
  for (size_t i = 0; i < size(); ++i) {
    std::span<const double> p = (*this)[i];
    std::vector<double> key(p.begin(), p.end());
    if (seen.insert(std::move(key)).second) out.push_back(p);
  }
  return out;
}

bool Ball::contains(std::span<const double> x) const {
  if (x.size() != center.size())
    throw ValidationError("Ball::contains: point dimension does not match center");
  return norm.distance(x, center) <= radius;
}

}  // namespace setconv
