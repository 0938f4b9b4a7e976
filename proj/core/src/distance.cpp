#include "setconv/distance.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "setconv/errors.hpp"

namespace setconv {
namespace {

void check_dims(const PointCloud& c, const PointCloud& d, const char* where) {
  if (c.dim() != d.dim())
    throw ValidationError(std::string(where) + ": cloud dimensions " + std::to_string(c.dim()) +
                          " and " + std::to_string(d.dim()) + " are incompatible");
}

}  // namespace

ExtReal point_to_set_distance(std::span<const double> x, const PointCloud& c,
                              const NormSpec& norm) {
  if (c.empty()) return ExtReal::infinity();
  if (static_cast<int>(x.size()) != c.dim())
    throw ValidationError("point_to_set_distance: point dimension " + std::to_string(x.size()) +
                          " does not match cloud dimension " + std::to_string(c.dim()));
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < c.size(); ++i) best = std::min(best, norm.distance(x, c[i]));
  return best;
}

ExtReal excess(const PointCloud& c, const PointCloud& d, const NormSpec& norm) {
  if (c.empty()) return 0.0;
  if (d.empty()) return ExtReal::infinity();
  check_dims(c, d, "excess");
  double worst = 0.0;
  for (size_t i = 0; i < c.size(); ++i) {
    std::span<const double> p = c[i];
    double best = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < d.size(); ++j) {
      best = std::min(best, norm.distance(p, d[j]));
      if (best <= worst) break;  // cannot raise the running maximum
    }
    worst = std::max(worst, best);
  }
  return worst;
}

PointCloud truncate(const PointCloud& c, double rho, const NormSpec& norm) {
  const std::vector<double> origin(static_cast<size_t>(std::max(c.dim(), 1)), 0.0);
  return truncate(c, rho, norm, origin);
}

PointCloud truncate(const PointCloud& c, double rho, const NormSpec& norm,
                    std::span<const double> center) {
  if (rho < 0) throw ValidationError("truncate: rho must be nonnegative");
  if (c.empty()) return c;
  if (static_cast<int>(center.size()) != c.dim())
    throw ValidationError("truncate: center dimension does not match cloud");
  PointCloud out(c.dim());
  for (size_t i = 0; i < c.size(); ++i)
    if (norm.distance(c[i], center) <= rho) out.push_back(c[i]);
  return out;
}

ExtReal truncated_hausdorff(const PointCloud& c, const PointCloud& d, double rho,
                            const NormSpec& norm) {
  const int dim = c.empty() ? d.dim() : c.dim();
  const std::vector<double> origin(static_cast<size_t>(std::max(dim, 1)), 0.0);
  return truncated_hausdorff(c, d, rho, norm, origin);
}

ExtReal truncated_hausdorff(const PointCloud& c, const PointCloud& d, double rho,
                            const NormSpec& norm, std::span<const double> center) {
  if (!c.empty() && !d.empty()) check_dims(c, d, "truncated_hausdorff");
  const PointCloud tc = c.empty() ? c : truncate(c, rho, norm, center);
  const PointCloud td = d.empty() ? d : truncate(d, rho, norm, center);
  return ext_max(excess(tc, d, norm), excess(td, c, norm));
}

TruncatedHausdorffDetail truncated_hausdorff_detail(const PointCloud& c, const PointCloud& d,
                                                    double rho, const NormSpec& norm) {
  if (!c.empty() && !d.empty()) check_dims(c, d, "truncated_hausdorff");
  const int dim = c.empty() ? std::max(d.dim(), 1) : c.dim();
  const std::vector<double> origin(static_cast<size_t>(std::max(dim, 1)), 0.0);
  const PointCloud tc = c.empty() ? c : truncate(c, rho, norm, origin);
  const PointCloud td = d.empty() ? d : truncate(d, rho, norm, origin);
  TruncatedHausdorffDetail out;
  out.c_truncation_empty = tc.empty();
  out.d_truncation_empty = td.empty();
  out.value = ext_max(excess(tc, d, norm), excess(td, c, norm));
  return out;
}

}  // namespace setconv
