#pragma once

#include <span>

#include "setconv/ext_real.hpp"
#include "setconv/norm.hpp"
#include "setconv/point_cloud.hpp"

namespace setconv {

/// dist(x, C) = min_{c in C} ||x - c||; +inf when C is empty (x then arbitrary).
ExtReal point_to_set_distance(std::span<const double> x, const PointCloud& c,
                              const NormSpec& norm);

/// exs(C; D) = sup_{x in C} dist(x, D) when both nonempty,
/// +inf when C nonempty and D empty, 0 when C empty.
/// The inner scan aborts once its running minimum cannot raise the outer
/// maximum; the returned value is identical to the plain double loop.
ExtReal excess(const PointCloud& c, const PointCloud& d, const NormSpec& norm);

/// Points of C within distance rho of center (<=, closed ball). Center
/// defaults to the origin.
PointCloud truncate(const PointCloud& c, double rho, const NormSpec& norm);
PointCloud truncate(const PointCloud& c, double rho, const NormSpec& norm,
                    std::span<const double> center);

/// dl_rho(C, D) = max{ exs(C cap B(0,rho); D), exs(D cap B(0,rho); C) }.
ExtReal truncated_hausdorff(const PointCloud& c, const PointCloud& d, double rho,
                            const NormSpec& norm);
ExtReal truncated_hausdorff(const PointCloud& c, const PointCloud& d, double rho,
                            const NormSpec& norm, std::span<const double> center);

/// Same value plus flags reporting empty truncations (both empty => value 0,
/// both flags set; reports surface the flags).
struct TruncatedHausdorffDetail {
  ExtReal value = 0.0;
  bool c_truncation_empty = false;
  bool d_truncation_empty = false;
};
TruncatedHausdorffDetail truncated_hausdorff_detail(const PointCloud& c, const PointCloud& d,
                                                    double rho, const NormSpec& norm);

}  // namespace setconv
