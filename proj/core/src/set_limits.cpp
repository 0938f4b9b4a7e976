#include "setconv/set_limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "setconv/distance.hpp"
#include "setconv/errors.hpp"

namespace setconv {
namespace {

void check_inputs(const SetSequence& seq, int nu_max, const PointCloud& probes, double tol) {
  if (!seq.generator) throw ValidationError("limit estimate: sequence has no generator");
  if (nu_max < 1) throw ValidationError("limit estimate: nu_max must be >= 1");
  if (probes.empty()) throw ValidationError("limit estimate: probe grid is empty");
  if (probes.dim() != seq.dim)
    throw ValidationError("limit estimate: probe dimension does not match sequence");
  if (tol < 0) throw ValidationError("limit estimate: tol must be nonnegative");
}

int tail_begin(int nu_max, int tail_start) {
  if (tail_start >= 1) return std::min(tail_start, nu_max);
  return std::max(1, nu_max / 2);
}

std::vector<PointCloud> generate_tail(const SetSequence& seq, int from, int to) {
  std::vector<PointCloud> clouds;
  clouds.reserve(static_cast<size_t>(to - from + 1));
  for (int nu = from; nu <= to; ++nu) {
    PointCloud c = seq.generator(nu);
    if (!c.empty() && c.dim() != seq.dim)
      throw ValidationError("limit estimate: generator produced dimension " +
                            std::to_string(c.dim()) + " at nu=" + std::to_string(nu));
    clouds.push_back(std::move(c));
  }
  return clouds;
}

}  // namespace

PointCloud inner_limit_estimate(const SetSequence& seq, int nu_max, const PointCloud& probes,
                                double tol, const NormSpec& norm, int tail_start) {
  check_inputs(seq, nu_max, probes, tol);
  const int from = tail_begin(nu_max, tail_start);
  const std::vector<PointCloud> tail = generate_tail(seq, from, nu_max);
  PointCloud out(probes.dim());
  for (size_t i = 0; i < probes.size(); ++i) {
    bool keep = true;
    for (const PointCloud& c : tail) {
      const ExtReal d = point_to_set_distance(probes[i], c, norm);
      if (!(d <= tol)) {
        keep = false;
        break;
      }
    }
    if (keep) out.push_back(probes[i]);
  }
  return out;
}

PointCloud outer_limit_estimate(const SetSequence& seq, int nu_max, const PointCloud& probes,
                                double tol, const NormSpec& norm, int tail_start) {
  check_inputs(seq, nu_max, probes, tol);
  const int from = tail_begin(nu_max, tail_start);
  const std::vector<PointCloud> tail = generate_tail(seq, from, nu_max);
  PointCloud out(probes.dim());
  for (size_t i = 0; i < probes.size(); ++i) {
    for (const PointCloud& c : tail) {
      if (point_to_set_distance(probes[i], c, norm) <= tol) {
        out.push_back(probes[i]);
        break;
      }
    }
  }
  return out;
}

ConvergenceReport set_convergence_report(const SetSequence& seq, const PointCloud& limit,
                                         const PointCloud& probes,
                                         const std::vector<int>& nu_schedule, double tol,
                                         const std::vector<double>& rho_list,
                                         const NormSpec& norm) {
  if (nu_schedule.empty()) throw ValidationError("set_convergence_report: empty nu schedule");
  check_inputs(seq, nu_schedule.back(), probes, tol);
  if (!std::is_sorted(nu_schedule.begin(), nu_schedule.end()))
    throw ValidationError("set_convergence_report: nu schedule must be nondecreasing");

  ConvergenceReport r;
  r.nu_schedule = nu_schedule;
  r.probes = probes;
  r.tol = tol;
  r.rho_list = rho_list;

  std::vector<PointCloud> clouds;
  clouds.reserve(nu_schedule.size());
  for (int nu : nu_schedule) clouds.push_back(seq.generator(nu));

  r.dist_limit.resize(probes.size());
  r.dist_seq.assign(probes.size(), std::vector<double>(nu_schedule.size()));
  r.max_tail_deviation.assign(probes.size(), 0.0);

  const size_t tail_from = nu_schedule.size() / 2;
  bool ok = true;
  for (size_t i = 0; i < probes.size(); ++i) {
    r.dist_limit[i] = point_to_set_distance(probes[i], limit, norm).value();
    double worst = 0.0;
    for (size_t k = 0; k < clouds.size(); ++k) {
      const double dk = point_to_set_distance(probes[i], clouds[k], norm).value();
      r.dist_seq[i][k] = dk;
      if (k >= tail_from) {
        const double dev = std::fabs(dk - r.dist_limit[i]);
        worst = std::max(worst, std::isnan(dev) ? 0.0 : dev);  // inf-inf agreement
      }
    }
    r.max_tail_deviation[i] = worst;
    if (worst > tol) ok = false;
  }
  r.verdict = ok;

  r.dl_table.assign(nu_schedule.size(), std::vector<double>(rho_list.size(), 0.0));
  for (size_t k = 0; k < clouds.size(); ++k)
    for (size_t j = 0; j < rho_list.size(); ++j)
      r.dl_table[k][j] = truncated_hausdorff(clouds[k], limit, rho_list[j], norm).value();
  return r;
}

PointCloud intersect_exact(const PointCloud& a, const PointCloud& b) {
  if (a.empty() || b.empty()) return PointCloud(std::max(1, a.dim() > 0 ? a.dim() : b.dim()));
  if (a.dim() != b.dim()) throw ValidationError("intersect_exact: dimensions differ");
  std::set<std::vector<double>> keys;
  for (size_t i = 0; i < b.size(); ++i) {
    std::span<const double> p = b[i];
    keys.emplace(p.begin(), p.end());
  }
  PointCloud out(a.dim());
  for (size_t i = 0; i < a.size(); ++i) {
    std::span<const double> p = a[i];
    if (keys.count(std::vector<double>(p.begin(), p.end()))) out.push_back(p);
  }
  return out.deduplicated();
}

PointCloud union_clouds(const PointCloud& a, const PointCloud& b) {
  if (a.empty()) return b.deduplicated();
  if (b.empty()) return a.deduplicated();
  if (a.dim() != b.dim()) throw ValidationError("union_clouds: dimensions differ");
  PointCloud out(a.dim());
  for (size_t i = 0; i < a.size(); ++i) out.push_back(a[i]);
  for (size_t i = 0; i < b.size(); ++i) out.push_back(b[i]);
  return out.deduplicated();
}

}  // namespace setconv
