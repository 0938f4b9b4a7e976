#include "setconv/vargeo.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "setconv/distance.hpp"
#include "setconv/errors.hpp"
#include "setconv/set_limits.hpp"

namespace setconv {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double dot(const std::vector<double>& a, std::span<const double> b) {
  return dot(std::span<const double>(a.data(), a.size()), b);
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

std::vector<double> normalized(std::vector<double> v) {
  const double n = norm2(v);
  if (n == 0.0) return v;
  for (double& x : v) x /= n;
  return v;
}

bool same_direction(const std::vector<double>& a, const std::vector<double>& b) {
  return dot(a, std::span<const double>(b.data(), b.size())) > 1.0 - 1e-9;
}

void push_unique_dir(std::vector<std::vector<double>>& out, std::vector<double> d) {
  d = normalized(std::move(d));
  if (norm2(d) < 0.5) return;
  for (const auto& e : out)
    if (same_direction(e, d)) return;
  out.push_back(std::move(d));
}

std::vector<double> cross(std::span<const double> a, std::span<const double> b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// Generators of {w | g_i . w <= 0} by candidate-ray enumeration, dim <= 3.
std::vector<std::vector<double>> hrep_generators(int dim,
                                                 const std::vector<std::vector<double>>& rows) {
  if (dim < 1 || dim > 3)
    throw ValidationError("cone representation conversion supports dim <= 3 only");

  std::vector<std::vector<double>> cand;
  if (dim == 1) {
    cand = {{1.0}, {-1.0}};
  } else if (dim == 2) {
    if (rows.empty()) {
      cand = {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}};
    } else {
      for (const auto& g : rows) {
        push_unique_dir(cand, {-g[1], g[0]});
        push_unique_dir(cand, {g[1], -g[0]});
        push_unique_dir(cand, {-g[0], -g[1]});
      }
    }
  } else {
    if (rows.empty()) {
      cand = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    } else {
      for (size_t i = 0; i < rows.size(); ++i) {
        const std::vector<double> gi = normalized(rows[i]);
        // In-plane basis of {gi . w = 0}.
        std::vector<double> u = std::fabs(gi[0]) < 0.9 ? std::vector<double>{1, 0, 0}
                                                       : std::vector<double>{0, 1, 0};
        std::vector<double> p = cross(gi, u);
        std::vector<double> q = cross(gi, p);
        push_unique_dir(cand, p);
        push_unique_dir(cand, {-p[0], -p[1], -p[2]});
        push_unique_dir(cand, q);
        push_unique_dir(cand, {-q[0], -q[1], -q[2]});
        push_unique_dir(cand, {-gi[0], -gi[1], -gi[2]});
        for (size_t j = 0; j < rows.size(); ++j) {
          if (i == j) continue;
          const std::vector<double> gj = normalized(rows[j]);
          std::vector<double> c = cross(gi, gj);
          push_unique_dir(cand, c);
          push_unique_dir(cand, {-c[0], -c[1], -c[2]});
          // Steepest descent into feasibility of row j within the plane of row i.
          const double t = dot(gj, std::span<const double>(gi.data(), gi.size()));
          push_unique_dir(cand, {-gj[0] + t * gi[0], -gj[1] + t * gi[1], -gj[2] + t * gi[2]});
        }
      }
    }
  }

  std::vector<std::vector<double>> gens;
  for (auto& d : cand) {
    d = normalized(std::move(d));
    if (norm2(d) < 0.5) continue;
    bool ok = true;
    for (const auto& g : rows)
      if (dot(g, std::span<const double>(d.data(), d.size())) > 1e-9 * (1.0 + norm2(g))) {
        ok = false;
        break;
      }
    if (ok) push_unique_dir(gens, d);
  }
  return gens;
}

}  // namespace

void ConvexPolyhedron::validate(const char* where) const {
  if (dim <= 0) throw ValidationError(std::string(where) + ": polyhedron dimension must be positive");
  if (a.size() != b.size())
    throw ValidationError(std::string(where) + ": row count does not match offset count");
  for (const auto& row : a)
    if (static_cast<int>(row.size()) != dim)
      throw ValidationError(std::string(where) + ": row dimension mismatch");
}

double ConvexPolyhedron::row_tol(size_t i) const {
  return 1e-9 * (1.0 + std::fabs(b[i]) + norm2(a[i]));
}

bool ConvexPolyhedron::contains(std::span<const double> x) const {
  validate("ConvexPolyhedron::contains");
  if (static_cast<int>(x.size()) != dim)
    throw ValidationError("ConvexPolyhedron::contains: point dimension mismatch");
  for (size_t i = 0; i < a.size(); ++i)
    if (dot(a[i], x) > b[i] + row_tol(i)) return false;
  return true;
}

std::vector<int> ConvexPolyhedron::active_rows(std::span<const double> x) const {
  std::vector<int> idx;
  for (size_t i = 0; i < a.size(); ++i)
    if (std::fabs(dot(a[i], x) - b[i]) <= row_tol(i)) idx.push_back(static_cast<int>(i));
  return idx;
}

Cone Cone::from_hrep(int dim, std::vector<std::vector<double>> rows) {
  Cone k;
  k.dim = dim;
  k.halfspaces = std::move(rows);
  k.has_hrep = true;
  for (const auto& r : k.halfspaces)
    if (static_cast<int>(r.size()) != dim) throw ValidationError("Cone::from_hrep: row dimension");
  return k;
}

Cone Cone::from_generators(int dim, std::vector<std::vector<double>> gens) {
  Cone k;
  k.dim = dim;
  k.generators = std::move(gens);
  k.has_gens = true;
  for (auto& g : k.generators) {
    if (static_cast<int>(g.size()) != dim)
      throw ValidationError("Cone::from_generators: generator dimension");
    g = normalized(std::move(g));
  }
  return k;
}

bool Cone::contains(std::span<const double> w, double tol) const {
  if (static_cast<int>(w.size()) != dim)
    throw ValidationError("Cone::contains: point dimension mismatch");
  if (has_hrep) {
    for (const auto& g : halfspaces)
      if (dot(g, w) > tol * (1.0 + norm2(g) * norm2(w))) return false;
    return true;
  }
  if (has_gens) return nnls_cone_distance(generators, w) <= tol;
  throw ValidationError("Cone::contains: cone has no representation");
}

void Cone::complete_representations() {
  if (has_hrep && !has_gens) {
    generators = hrep_generators(dim, halfspaces);
    has_gens = true;
  } else if (has_gens && !has_hrep) {
    // K = (K polar) polar: rows of the H-rep are the generators of the polar.
    halfspaces = hrep_generators(dim, generators);
    has_hrep = true;
  }
}

double nnls_cone_distance(const std::vector<std::vector<double>>& generators,
                          std::span<const double> v) {
  const int n = static_cast<int>(v.size());
  const int k = static_cast<int>(generators.size());
  const Eigen::Map<const Eigen::VectorXd> vv(v.data(), n);
  double best = vv.norm();  // empty support: the cone always contains 0
  if (k == 0) return best;

  Eigen::MatrixXd all(n, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n; ++i) all(i, j) = generators[static_cast<size_t>(j)][static_cast<size_t>(i)];

  if (k <= 16) {
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
      const int s = __builtin_popcount(mask);
      if (s > n) continue;
      Eigen::MatrixXd sub(n, s);
      int col = 0;
      for (int j = 0; j < k; ++j)
        if (mask & (1u << j)) sub.col(col++) = all.col(j);
      const Eigen::VectorXd lam = sub.colPivHouseholderQr().solve(vv);
      if ((lam.array() < -1e-10).any()) continue;
      best = std::min(best, (sub * lam - vv).norm());
    }
    return best;
  }

  // Projected gradient fallback for large generator lists.
  Eigen::VectorXd lam = Eigen::VectorXd::Zero(k);
  const Eigen::MatrixXd ata = all.transpose() * all;
  const Eigen::VectorXd atv = all.transpose() * vv;
  const double step = 1.0 / std::max(1e-12, ata.norm());
  for (int it = 0; it < 2000; ++it)
    lam = (lam - step * (ata * lam - atv)).cwiseMax(0.0);
  return std::min(best, (all * lam - vv).norm());
}

Cone tangent_cone_polyhedral(const ConvexPolyhedron& c, std::span<const double> x) {
  c.validate("tangent_cone_polyhedral");
  if (!c.contains(x))
    throw ValidationError("tangent_cone_polyhedral: point is not in the polyhedron");
  std::vector<std::vector<double>> rows;
  for (int i : c.active_rows(x)) rows.push_back(c.a[static_cast<size_t>(i)]);
  return Cone::from_hrep(c.dim, std::move(rows));
}

PointCloud tangent_cone_sampled(const PointCloud& c, std::span<const double> x,
                                const std::vector<double>& magnifications,
                                const PointCloud& probes, double tol, const NormSpec& norm) {
  if (c.empty()) throw ValidationError("tangent_cone_sampled: empty cloud");
  if (magnifications.empty()) throw ValidationError("tangent_cone_sampled: empty schedule");
  if (!(point_to_set_distance(x, c, norm) <= tol))
    throw ValidationError("tangent_cone_sampled: x is not within tol of the set");

  const std::vector<double> base(x.begin(), x.end());
  SetSequence seq;
  seq.dim = c.dim();
  seq.generator = [&c, base, &magnifications](int nu) {
    const double m = magnifications[static_cast<size_t>(nu - 1)];
    PointCloud out(c.dim());
    std::vector<double> buf(static_cast<size_t>(c.dim()));
    for (size_t i = 0; i < c.size(); ++i) {
      std::span<const double> p = c[i];
      for (size_t d = 0; d < buf.size(); ++d) buf[d] = m * (p[d] - base[d]);
      out.push_back(buf);
    }
    return out;
  };
  return outer_limit_estimate(seq, static_cast<int>(magnifications.size()), probes, tol, norm);
}

Cone polar_cone(const Cone& k) {
  Cone out;
  out.dim = k.dim;
  if (k.has_hrep) {
    out.generators = k.halfspaces;
    for (auto& g : out.generators) g = normalized(std::move(g));
    out.has_gens = true;
  }
  if (k.has_gens) {
    out.halfspaces = k.generators;
    out.has_hrep = true;
  }
  if (!out.has_gens && !out.has_hrep)
    throw ValidationError("polar_cone: cone has no representation");
  return out;
}

Cone regular_normal_cone(const Cone& tangent) { return polar_cone(tangent); }

PointCloud direction_probes(int dim, double angular_step_deg) {
  if (angular_step_deg <= 0) throw ValidationError("direction_probes: step must be positive");
  const double step = angular_step_deg * M_PI / 180.0;
  if (dim == 1) return PointCloud::from_points(1, {{1.0}, {-1.0}});
  if (dim == 2) {
    PointCloud out(2);
    const int n = std::max(4, static_cast<int>(std::round(2.0 * M_PI / step)));
    for (int i = 0; i < n; ++i) {
      const double t = 2.0 * M_PI * i / n;
      out.push_back({std::cos(t), std::sin(t)});
    }
    return out;
  }
  if (dim == 3) {
    PointCloud out(3);
    const int n_lat = std::max(2, static_cast<int>(std::round(M_PI / step)));
    out.push_back({0.0, 0.0, 1.0});
    out.push_back({0.0, 0.0, -1.0});
    for (int i = 1; i < n_lat; ++i) {
      const double theta = M_PI * i / n_lat;
      const int n_lon = std::max(4, static_cast<int>(std::round(2.0 * M_PI * std::sin(theta) / step)));
      for (int j = 0; j < n_lon; ++j) {
        const double phi = 2.0 * M_PI * j / n_lon;
        out.push_back({std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                       std::cos(theta)});
      }
    }
    return out;
  }
  throw ValidationError("direction_probes: dim must be 1, 2, or 3");
}

PointCloud limiting_normal_cone_sampled(const PointCloud& c, std::span<const double> x,
                                        const LimitingNormalParams& params,
                                        const PointCloud& probes, const NormSpec& norm) {
  if (c.empty()) throw ValidationError("limiting_normal_cone_sampled: empty cloud");
  if (params.approach_radii.empty() || params.magnifications.empty())
    throw ValidationError("limiting_normal_cone_sampled: empty schedules");

  std::vector<PointCloud> stages;
  bool any_points = false;
  for (double r : params.approach_radii) {
    std::vector<std::pair<double, size_t>> near;
    for (size_t i = 0; i < c.size(); ++i) {
      const double d = norm.distance(c[i], x);
      if (d <= r) near.emplace_back(d, i);
    }
    std::sort(near.begin(), near.end());
    if (near.size() > static_cast<size_t>(params.max_points_per_stage))
      near.resize(static_cast<size_t>(params.max_points_per_stage));
    PointCloud stage(c.dim());
    for (const auto& [d, i] : near) {
      any_points = true;
      const PointCloud t =
          tangent_cone_sampled(c, c[i], params.magnifications, probes, params.tangent_tol, norm);
      for (size_t p = 0; p < probes.size(); ++p) {
        bool is_normal = true;
        for (size_t w = 0; w < t.size(); ++w)
          if (dot(probes[p], t[w]) > params.polar_tol) {
            is_normal = false;
            break;
          }
        if (is_normal) stage.push_back(probes[p]);
      }
    }
    stages.push_back(stage.deduplicated());
  }
  if (!any_points)
    throw NumericalError("limiting_normal_cone_sampled: insufficient boundary samples near x");

  SetSequence seq;
  seq.dim = c.dim();
  seq.generator = [&stages](int nu) { return stages[static_cast<size_t>(nu - 1)]; };
  return outer_limit_estimate(seq, static_cast<int>(stages.size()), probes, params.outer_tol,
                              norm);
}

PiecewiseSmooth1D PiecewiseSmooth1D::single(ScalarField f) {
  PiecewiseSmooth1D out;
  out.pieces.push_back(std::move(f));
  out.validate("PiecewiseSmooth1D::single");
  return out;
}

PiecewiseSmooth1D PiecewiseSmooth1D::from_pieces(std::vector<double> breakpoints,
                                                 std::vector<ScalarField> pieces) {
  PiecewiseSmooth1D out;
  out.breakpoints = std::move(breakpoints);
  out.pieces = std::move(pieces);
  out.validate("PiecewiseSmooth1D::from_pieces");
  return out;
}

void PiecewiseSmooth1D::validate(const char* where) const {
  if (pieces.size() != breakpoints.size() + 1)
    throw ValidationError(std::string(where) + ": need breakpoints+1 pieces");
  for (size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i - 1] < breakpoints[i]))
      throw ValidationError(std::string(where) + ": breakpoints must strictly ascend");
  for (const ScalarField& p : pieces)
    if (p.dim != 1) throw ValidationError(std::string(where) + ": pieces must be 1-D");
}

int PiecewiseSmooth1D::piece_index(double x) const {
  const auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x);
  return static_cast<int>(it - breakpoints.begin());
}

bool PiecewiseSmooth1D::at_breakpoint(double x, int* index) const {
  const double tol = 1e-12 * (1.0 + std::fabs(x));
  for (size_t i = 0; i < breakpoints.size(); ++i) {
    if (std::fabs(x - breakpoints[i]) <= tol) {
      if (index) *index = static_cast<int>(i);
      return true;
    }
  }
  return false;
}

ExtReal PiecewiseSmooth1D::eval(double x) const {
  int bi = 0;
  if (at_breakpoint(x, &bi)) {
    const bool lc = left_closed.empty() ? true : left_closed[static_cast<size_t>(bi)];
    const bool rc = right_closed.empty() ? true : right_closed[static_cast<size_t>(bi)];
    ExtReal v = ExtReal::infinity();
    if (lc || !rc) v = ext_min(v, pieces[static_cast<size_t>(bi)](x));
    if (rc || !lc) v = ext_min(v, pieces[static_cast<size_t>(bi) + 1](x));
    return v;
  }
  return pieces[static_cast<size_t>(piece_index(x))](x);
}

double PiecewiseSmooth1D::slope(double x, int side) const {
  int bi = 0;
  int idx;
  if (at_breakpoint(x, &bi))
    idx = side < 0 ? bi : bi + 1;
  else
    idx = piece_index(x);
  const ScalarField& p = pieces[static_cast<size_t>(idx)];
  if (p.has_grad()) return p.grad(std::span<const double>(&x, 1))[0];
  const double d = 1e-6 * (1.0 + std::fabs(x));
  const ExtReal hi = p(x + d);
  const ExtReal lo = p(x - d);
  if (!hi.is_finite() || !lo.is_finite())
    throw NumericalError("PiecewiseSmooth1D::slope: piece formula is not finite near x");
  return (hi.value() - lo.value()) / (2.0 * d);
}

double Subdifferential1D::dist_to_zero() const {
  switch (kind) {
    case Kind::Singleton:
      return std::fabs(slope);
    case Kind::Interval:
      if (lo <= ExtReal(0.0) && ExtReal(0.0) <= hi) return 0.0;
      if (hi < ExtReal(0.0)) return std::fabs(hi.value());
      return lo.value();
    case Kind::SlopePair:
      return std::min(std::fabs(slopes[0]), std::fabs(slopes[1]));
  }
  return 0.0;
}

bool Subdifferential1D::contains(double s, double tol) const {
  switch (kind) {
    case Kind::Singleton:
      return std::fabs(s - slope) <= tol;
    case Kind::Interval:
      return ExtReal(s - tol) <= hi && lo <= ExtReal(s + tol);
    case Kind::SlopePair:
      return std::fabs(s - slopes[0]) <= tol || std::fabs(s - slopes[1]) <= tol;
  }
  return false;
}

std::vector<std::array<double, 2>> Subdifferential1D::normal_directions() const {
  std::vector<std::array<double, 2>> out;
  switch (kind) {
    case Kind::Singleton:
      out.push_back({slope, -1.0});
      break;
    case Kind::Interval:
      if (lo.is_finite()) out.push_back({lo.value(), -1.0});
      if (hi.is_finite()) out.push_back({hi.value(), -1.0});
      break;
    case Kind::SlopePair:
      out.push_back({slopes[0], -1.0});
      out.push_back({slopes[1], -1.0});
      break;
  }
  return out;
}

Subdifferential1D subdifferential_1d(const PiecewiseSmooth1D& f, double x) {
  f.validate("subdifferential_1d");
  const ExtReal v = f.eval(x);
  if (!v.is_finite())
    throw ValidationError("subdifferential_1d: f(x) is not finite");

  Subdifferential1D out;
  int bi = 0;
  if (!f.at_breakpoint(x, &bi)) {
    out.kind = Subdifferential1D::Kind::Singleton;
    out.slope = f.slope(x, -1);
    return out;
  }

  const double probe = 1e-7 * (1.0 + std::fabs(x));
  const ExtReal left_val = f.pieces[static_cast<size_t>(bi)](x - probe);
  const ExtReal right_val = f.pieces[static_cast<size_t>(bi) + 1](x + probe);
  if (left_val.is_neg_inf() || right_val.is_neg_inf())
    throw NumericalError("subdifferential_1d: f is -inf near x");

  const ExtReal s_minus =
      left_val.is_pos_inf() ? ExtReal::neg_infinity() : ExtReal(f.slope(x, -1));
  const ExtReal s_plus =
      right_val.is_pos_inf() ? ExtReal::infinity() : ExtReal(f.slope(x, +1));

  if (s_minus == s_plus && s_minus.is_finite()) {
    out.kind = Subdifferential1D::Kind::Singleton;
    out.slope = s_minus.value();
    return out;
  }
  if (s_minus <= s_plus) {
    out.kind = Subdifferential1D::Kind::Interval;
    out.lo = s_minus;
    out.hi = s_plus;
    return out;
  }
  out.kind = Subdifferential1D::Kind::SlopePair;
  out.slopes = {s_plus.value(), s_minus.value()};
  return out;
}

double fermat_residual_1d(const PiecewiseSmooth1D& f, double x) {
  return subdifferential_1d(f, x).dist_to_zero();
}

double optimality_residual(
    const std::function<std::vector<double>(std::span<const double>)>& grad_f,
    const ConvexPolyhedron& c, std::span<const double> x) {
  c.validate("optimality_residual");
  if (!c.contains(x))
    throw ValidationError("optimality_residual: point is not in the polyhedron");
  const std::vector<double> g = grad_f(x);
  if (static_cast<int>(g.size()) != c.dim)
    throw ValidationError("optimality_residual: gradient dimension mismatch");
  std::vector<double> v(g.size());
  for (size_t i = 0; i < g.size(); ++i) v[i] = -g[i];
  std::vector<std::vector<double>> gens;
  for (int i : c.active_rows(x)) gens.push_back(c.a[static_cast<size_t>(i)]);
  return nnls_cone_distance(gens, v);
}

}  // namespace setconv
