#pragma once

#include <functional>
#include <vector>

#include "setconv/norm.hpp"
#include "setconv/point_cloud.hpp"

namespace setconv {

/// Indexed family of sampled sets C^nu, nu = 1, 2, ...
/// The generator must be deterministic in nu.
struct SetSequence {
  int dim = 1;
  std::function<PointCloud(int nu)> generator;
};

/// Finite surrogate of the inner limit: probes x with
/// sup_{nu in [tail_start, nu_max]} dist(x, C^nu) <= tol.
/// tail_start < 1 selects the default window [nu_max/2, nu_max].
PointCloud inner_limit_estimate(const SetSequence& seq, int nu_max, const PointCloud& probes,
                                double tol, const NormSpec& norm, int tail_start = -1);

/// Finite surrogate of the outer limit: probes x with
/// inf_{nu in [tail_start, nu_max]} dist(x, C^nu) <= tol.
PointCloud outer_limit_estimate(const SetSequence& seq, int nu_max, const PointCloud& probes,
                                double tol, const NormSpec& norm, int tail_start = -1);

/// Per-probe distance comparison against a candidate limit plus a truncated
/// Hausdorff table over a rho list.
struct ConvergenceReport {
  std::vector<int> nu_schedule;
  PointCloud probes;
  std::vector<double> dist_limit;               // dist(probe, C), per probe
  std::vector<std::vector<double>> dist_seq;    // [probe][schedule idx], +inf encoded as inf
  std::vector<double> max_tail_deviation;       // per probe, over the scheduled tail
  double tol = 0.0;
  bool verdict = false;                         // all tail deviations <= tol
  std::vector<double> rho_list;
  std::vector<std::vector<double>> dl_table;    // [schedule idx][rho idx]
};

/// Checks dist(x, C^nu) -> dist(x, C) on the probes (the pointwise
/// characterization of set convergence) and cross-tabulates dl_rho(C^nu, C).
ConvergenceReport set_convergence_report(const SetSequence& seq, const PointCloud& limit,
                                         const PointCloud& probes,
                                         const std::vector<int>& nu_schedule, double tol,
                                         const std::vector<double>& rho_list,
                                         const NormSpec& norm);

/// Exact point matching between clouds sampled on shared grids.
PointCloud intersect_exact(const PointCloud& a, const PointCloud& b);

/// Concatenation (duplicates removed).
PointCloud union_clouds(const PointCloud& a, const PointCloud& b);

}  // namespace setconv
