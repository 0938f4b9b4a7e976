#include "setconv/geneq.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "setconv/distance.hpp"
#include "setconv/errors.hpp"

namespace setconv {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double to_double(ExtReal v) {
  if (v.is_pos_inf()) return kInf;
  if (v.is_neg_inf()) return -kInf;
  return v.value();
}

GridSpec capped(const GridSpec& g, int max_steps) {
  GridSpec out = g;
  for (auto& ax : out.axes) ax.steps = std::min(ax.steps, max_steps);
  return out;
}

double euclidean_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct NewtonOutcome {
  Vec x;
  int iterations = 0;
  double residual = 0;
};

/// Damped Newton on G(x) = 0 with residual-norm line search.
NewtonOutcome damped_newton(const std::function<Vec(const Vec&)>& g,
                            const std::function<Mat(const Vec&)>& jac, Vec x,
                            const NewtonParams& params, int stage) {
  auto fail = [&](const char* why) -> SolverDivergence {
    std::vector<double> last(x.data(), x.data() + x.size());
    return SolverDivergence(std::string("newton stage ") + std::to_string(stage) + ": " + why,
                            stage, std::move(last));
  };
  Vec r = g(x);
  if (!r.allFinite()) throw fail("residual not finite at start");
  double rn = r.norm();
  for (int it = 0; it < params.max_iter; ++it) {
    if (rn <= params.tol) return {x, it, rn};
    const Mat j = jac(x);
    if (!j.allFinite()) throw fail("jacobian not finite");
    const Vec dx = j.partialPivLu().solve(-r);
    if (!dx.allFinite()) throw fail("linear solve failed");
    double step = 1.0;
    bool accepted = false;
    for (int h = 0; h <= params.max_halvings; ++h) {
      const Vec xn = x + step * dx;
      const Vec rnew = g(xn);
      if (rnew.allFinite() && rnew.norm() < rn) {
        x = xn;
        r = rnew;
        rn = rnew.norm();
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) throw fail("line search stalled");
  }
  if (rn <= params.tol) return {x, params.max_iter, rn};
  throw fail("iteration limit reached");
}

Vec to_vec(std::span<const double> x) {
  return Eigen::Map<const Vec>(x.data(), static_cast<Eigen::Index>(x.size()));
}

}  // namespace

SetValuedMap make_single_valued(
    int in_dim, int out_dim,
    std::function<std::vector<double>(std::span<const double>)> value,
    std::function<std::vector<std::vector<double>>(std::span<const double>)> jacobian) {
  SetValuedMap s;
  s.in_dim = in_dim;
  s.out_dim = out_dim;
  s.single_valued = true;
  s.jacobian = std::move(jacobian);
  s.eval = [out_dim, value = std::move(value)](std::span<const double> x) {
    PointCloud c(out_dim);
    c.push_back(value(x));
    return c;
  };
  return s;
}

std::vector<double> single_value(const SetValuedMap& s, std::span<const double> x) {
  if (!s.single_valued) throw ValidationError("single_value: map is not single-valued");
  const PointCloud c = s.eval(x);
  if (c.size() != 1) throw ValidationError("single_value: value set is not a single point");
  std::span<const double> p = c[0];
  return std::vector<double>(p.begin(), p.end());
}

NormSpec graph_norm(int in_dim, int out_dim) {
  return NormSpec::product({{in_dim, NormSpec::euclidean()}, {out_dim, NormSpec::euclidean()}});
}

PointCloud sample_graph(const SetValuedMap& s, const GridSpec& in_grid, const GridSpec& out_grid) {
  in_grid.validate("sample_graph");
  if (in_grid.dim() != s.in_dim) throw ValidationError("sample_graph: input grid dimension");
  if (s.graph_sampler) return s.graph_sampler(in_grid, out_grid);
  PointCloud g(s.in_dim + s.out_dim);
  std::vector<double> row(static_cast<size_t>(s.in_dim + s.out_dim));
  for_each_grid_point(in_grid, [&](std::span<const double> x) {
    const PointCloud vals = s.eval(x);
    if (vals.dim() != s.out_dim) throw ValidationError("sample_graph: value dimension mismatch");
    for (size_t i = 0; i < vals.size(); ++i) {
      std::copy(x.begin(), x.end(), row.begin());
      std::span<const double> y = vals[i];
      std::copy(y.begin(), y.end(), row.begin() + s.in_dim);
      g.push_back(row);
    }
  });
  return g;
}

double graph_distance(const SetValuedMap& s, const SetValuedMap& t, double rho,
                      const GridSpec& in_grid, const GridSpec& out_grid, const NormSpec& norm) {
  if (s.in_dim != t.in_dim || s.out_dim != t.out_dim)
    throw ValidationError("graph_distance: mapping dimensions differ");
  const PointCloud gs = sample_graph(s, in_grid, out_grid);
  const PointCloud gt = sample_graph(t, in_grid, out_grid);
  return to_double(truncated_hausdorff(gs, gt, rho, norm));
}

double graph_distance(const SetValuedMap& s, const SetValuedMap& t, double rho,
                      const GridSpec& in_grid, const GridSpec& out_grid) {
  return graph_distance(s, t, rho, in_grid, out_grid, graph_norm(s.in_dim, s.out_dim));
}

PointCloud preimage(const SetValuedMap& s, const Ball& y_ball, const GridSpec& domain_grid) {
  domain_grid.validate("preimage");
  if (domain_grid.dim() != s.in_dim) throw ValidationError("preimage: domain grid dimension");
  if (static_cast<int>(y_ball.center.size()) != s.out_dim)
    throw ValidationError("preimage: ball center dimension");
  PointCloud out(s.in_dim);
  for_each_grid_point(domain_grid, [&](std::span<const double> x) {
    const ExtReal d = point_to_set_distance(y_ball.center, s.eval(x), y_ball.norm);
    if (d <= ExtReal(y_ball.radius)) out.push_back(x);
  });
  return out;
}

NearSolutionReport near_solution_check(const SetValuedMap& s, const SetValuedMap& t,
                                       std::vector<double> y_bar, double epsilon, double delta,
                                       double rho, const GridSpec& in_grid,
                                       const GridSpec& out_grid) {
  if (static_cast<int>(y_bar.size()) != s.out_dim)
    throw ValidationError("near_solution_check: y_bar dimension");
  NearSolutionReport rep;
  rep.rho = rho;
  rep.epsilon = epsilon;
  rep.delta = delta;
  rep.dl = graph_distance(s, t, rho, in_grid, out_grid);

  const NormSpec eucl = NormSpec::euclidean();
  rep.delta_strict = delta > epsilon + rep.dl;
  rep.preconditions_ok = epsilon >= 0.0 && epsilon <= rho &&
                         euclidean_norm(y_bar) <= rho - epsilon &&
                         delta >= epsilon + rep.dl;

  const PointCloud s_pre =
      truncate(preimage(s, Ball{y_bar, epsilon, eucl}, in_grid), rho, eucl);
  const PointCloud t_pre = preimage(t, Ball{y_bar, delta, eucl}, in_grid);
  rep.s_preimage_empty = s_pre.empty();
  rep.t_preimage_empty = t_pre.empty();
  rep.excess = to_double(excess(s_pre, t_pre, eucl));
  rep.margin = rep.dl - rep.excess;
  rep.holds = rep.excess <= rep.dl;
  return rep;
}

OscReport osc_diagnostic(const SetValuedMap& s, double rho, const GridSpec& in_grid,
                         const GridSpec& out_grid, double tol, std::vector<int> factors) {
  if (factors.empty()) throw ValidationError("osc_diagnostic: no refinement factors");
  OscReport rep;
  rep.tol = tol > 0 ? tol : 2.0 * (in_grid.max_spacing() + out_grid.max_spacing());
  rep.factors = std::move(factors);

  const NormSpec norm = graph_norm(s.in_dim, s.out_dim);
  const PointCloud coarse = sample_graph(s, in_grid, out_grid);
  for (int f : rep.factors) {
    if (f < 2) throw ValidationError("osc_diagnostic: factors must be >= 2");
    const PointCloud fine = sample_graph(s, in_grid.refined(f), out_grid.refined(f));
    const double v = to_double(excess(truncate(fine, rho, norm), coarse, norm));
    rep.violations.push_back(v);
    rep.max_violation = std::max(rep.max_violation, v);
  }
  rep.osc = rep.max_violation <= rep.tol;
  return rep;
}

double smooth_plus(double alpha, double theta) {
  if (theta <= 0) throw ValidationError("smooth_plus: theta must be positive");
  // log(1 + e^a)/theta = max(0, alpha) + log1p(e^{-|a|})/theta, overflow-free.
  const double a = alpha * theta;
  return std::max(alpha, 0.0) + std::log1p(std::exp(-std::fabs(a))) / theta;
}

double smooth_plus_derivative(double alpha, double theta) {
  if (theta <= 0) throw ValidationError("smooth_plus_derivative: theta must be positive");
  const double a = alpha * theta;
  if (a >= 0) return 1.0 / (1.0 + std::exp(-a));
  const double e = std::exp(a);
  return e / (1.0 + e);
}

std::vector<double> normal_map_residual(const VectorField& f, std::span<const double> z) {
  if (static_cast<int>(z.size()) != f.in_dim || f.in_dim != f.out_dim)
    throw ValidationError("normal_map_residual: needs a square field matching z");
  std::vector<double> p(z.size());
  for (size_t i = 0; i < z.size(); ++i) p[i] = std::max(0.0, z[i]);
  std::vector<double> r = f.eval(p);
  for (size_t i = 0; i < z.size(); ++i) r[i] += z[i] - p[i];
  return r;
}

SetValuedMap normal_map_svmap(const VectorField& f, double theta) {
  if (f.in_dim != f.out_dim) throw ValidationError("normal_map_svmap: field must be square");
  const int n = f.in_dim;
  auto value = [f, theta, n](std::span<const double> z) {
    std::vector<double> p(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
      p[static_cast<size_t>(i)] = theta > 0 ? smooth_plus(z[static_cast<size_t>(i)], theta)
                                            : std::max(0.0, z[static_cast<size_t>(i)]);
    std::vector<double> r = f.eval(p);
    for (int i = 0; i < n; ++i)
      r[static_cast<size_t>(i)] += z[static_cast<size_t>(i)] - p[static_cast<size_t>(i)];
    return r;
  };
  return make_single_valued(n, n, std::move(value));
}

void SmoothingSchedule::validate() const {
  if (thetas.empty()) throw ValidationError("SmoothingSchedule: empty");
  double prev = 0.0;
  for (double t : thetas) {
    if (!(t > prev)) throw ValidationError("SmoothingSchedule: thetas must be positive and strictly increasing");
    prev = t;
  }
}

void HomotopySchedule::validate() const {
  if (lambdas.empty()) throw ValidationError("HomotopySchedule: empty");
  if (lambdas.front() > 1.0) throw ValidationError("HomotopySchedule: lambdas must start at or below 1");
  for (size_t i = 0; i < lambdas.size(); ++i) {
    const double l = lambdas[i];
    const bool terminal_zero = (l == 0.0 && i + 1 == lambdas.size());
    if (!(l > 0.0) && !terminal_zero)
      throw ValidationError("HomotopySchedule: lambdas must lie in (0,1] (terminal 0 allowed)");
    if (i > 0 && !(l < lambdas[i - 1]))
      throw ValidationError("HomotopySchedule: lambdas must strictly decrease");
  }
  if (!targets.empty() && targets.size() != lambdas.size())
    throw ValidationError("HomotopySchedule: targets must match lambdas in length");
}

CpSolveResult solve_cp_smoothed(const VectorField& f, const SmoothingSchedule& schedule,
                                std::vector<double> z0, const NewtonParams& params) {
  schedule.validate();
  if (f.in_dim != f.out_dim) throw ValidationError("solve_cp_smoothed: field must be square");
  if (!f.has_jacobian()) throw ValidationError("solve_cp_smoothed: jacobian required");
  if (static_cast<int>(z0.size()) != f.in_dim)
    throw ValidationError("solve_cp_smoothed: z0 dimension");
  const int n = f.in_dim;

  CpSolveResult result;
  Vec z = to_vec(z0);
  for (size_t stage = 0; stage < schedule.thetas.size(); ++stage) {
    const double theta = schedule.thetas[stage];
    auto g = [&f, theta, n](const Vec& zz) {
      std::vector<double> p(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = smooth_plus(zz[i], theta);
      std::vector<double> r = f.eval(p);
      Vec out(n);
      for (int i = 0; i < n; ++i) out[i] = r[static_cast<size_t>(i)] + zz[i] - p[static_cast<size_t>(i)];
      return out;
    };
    auto jac = [&f, theta, n](const Vec& zz) {
      std::vector<double> p(static_cast<size_t>(n));
      Vec d(n);
      for (int i = 0; i < n; ++i) {
        p[static_cast<size_t>(i)] = smooth_plus(zz[i], theta);
        d[i] = smooth_plus_derivative(zz[i], theta);
      }
      const std::vector<std::vector<double>> jf = f.jacobian(p);
      Mat j = Mat::Identity(n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          j(r, c) += (jf[static_cast<size_t>(r)][static_cast<size_t>(c)] - (r == c ? 1.0 : 0.0)) * d[c];
      return j;
    };
    const NewtonOutcome out = damped_newton(g, jac, z, params, static_cast<int>(stage));
    z = out.x;
    result.trace.push_back({theta, out.iterations, out.residual});
  }
  result.z.assign(z.data(), z.data() + z.size());
  result.exact_residual = euclidean_norm(normal_map_residual(f, result.z));
  return result;
}

std::vector<double> cp_graph_distance_trend(const VectorField& f,
                                            const SmoothingSchedule& schedule, double rho,
                                            const GridSpec& in_grid, const GridSpec& out_grid) {
  schedule.validate();
  const SetValuedMap exact = normal_map_svmap(f, 0.0);
  std::vector<double> trend;
  for (double theta : schedule.thetas)
    trend.push_back(graph_distance(normal_map_svmap(f, theta), exact, rho, in_grid, out_grid));
  return trend;
}

HomotopySolveResult homotopy_solve(const SetValuedMap& s, std::vector<double> y_bar,
                                   const HomotopySchedule& schedule,
                                   const NewtonParams& params) {
  schedule.validate();
  if (!s.single_valued) throw ValidationError("homotopy_solve: map must be single-valued");
  if (!s.has_jacobian()) throw ValidationError("homotopy_solve: jacobian required");
  if (s.in_dim != s.out_dim) throw ValidationError("homotopy_solve: map must be square");
  if (static_cast<int>(y_bar.size()) != s.out_dim)
    throw ValidationError("homotopy_solve: y_bar dimension");
  const int n = s.in_dim;

  auto target_at = [&](size_t stage) -> const std::vector<double>& {
    return schedule.targets.empty() ? y_bar : schedule.targets[stage];
  };

  HomotopySolveResult result;
  Vec x = to_vec(y_bar);
  for (size_t stage = 0; stage < schedule.lambdas.size(); ++stage) {
    const double lambda = schedule.lambdas[stage];
    const Vec t = to_vec(target_at(stage));
    if (lambda == 1.0) {
      // (1-1) S(x) + x = t is solved by x = t.
      x = t;
      result.trace.push_back({lambda, 0, 0.0});
      continue;
    }
    auto g = [&s, lambda, &t, n](const Vec& xx) {
      const std::vector<double> v =
          single_value(s, std::span<const double>(xx.data(), static_cast<size_t>(n)));
      Vec out(n);
      for (int i = 0; i < n; ++i) out[i] = (1.0 - lambda) * v[static_cast<size_t>(i)] + lambda * xx[i] - t[i];
      return out;
    };
    auto jac = [&s, lambda, n](const Vec& xx) {
      const std::vector<std::vector<double>> js =
          s.jacobian(std::span<const double>(xx.data(), static_cast<size_t>(n)));
      Mat j(n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          j(r, c) = (1.0 - lambda) * js[static_cast<size_t>(r)][static_cast<size_t>(c)] +
                    (r == c ? lambda : 0.0);
      return j;
    };
    const NewtonOutcome out = damped_newton(g, jac, x, params, static_cast<int>(stage));
    x = out.x;
    result.trace.push_back({lambda, out.iterations, out.residual});
  }
  result.x.assign(x.data(), x.data() + x.size());
  const std::vector<double> v = single_value(s, result.x);
  const std::vector<double>& t = target_at(schedule.lambdas.size() - 1);
  double r2 = 0.0;
  for (size_t i = 0; i < v.size(); ++i) r2 += (v[i] - t[i]) * (v[i] - t[i]);
  result.final_residual = std::sqrt(r2);
  return result;
}

SetValuedMap homotopy_stage_map(const SetValuedMap& s, double lambda) {
  SetValuedMap out;
  out.in_dim = s.in_dim;
  out.out_dim = s.out_dim;
  out.single_valued = s.single_valued;
  if (s.in_dim != s.out_dim) throw ValidationError("homotopy_stage_map: map must be square");
  out.eval = [s, lambda](std::span<const double> x) {
    const PointCloud vals = s.eval(x);
    PointCloud mixed(vals.dim());
    std::vector<double> row(static_cast<size_t>(vals.dim()));
    for (size_t i = 0; i < vals.size(); ++i) {
      std::span<const double> y = vals[i];
      for (size_t d = 0; d < row.size(); ++d) row[d] = (1.0 - lambda) * y[d] + lambda * x[d];
      mixed.push_back(row);
    }
    return mixed;
  };
  if (s.has_jacobian() && s.single_valued) {
    out.jacobian = [s, lambda](std::span<const double> x) {
      std::vector<std::vector<double>> j = s.jacobian(x);
      for (size_t r = 0; r < j.size(); ++r)
        for (size_t c = 0; c < j[r].size(); ++c)
          j[r][c] = (1.0 - lambda) * j[r][c] + (r == c ? lambda : 0.0);
      return j;
    };
  }
  return out;
}

PointCloud subgradient_graph_1d(const PiecewiseSmooth1D& f, const GridSpec& in_grid,
                                const GridSpec& out_grid) {
  f.validate("subgradient_graph_1d");
  in_grid.validate("subgradient_graph_1d");
  out_grid.validate("subgradient_graph_1d");
  if (in_grid.dim() != 1 || out_grid.dim() != 1)
    throw ValidationError("subgradient_graph_1d: grids must be 1-D");

  PointCloud g(2);
  for_each_grid_point(in_grid, [&](std::span<const double> xp) {
    const double x = xp[0];
    if (f.at_breakpoint(x, nullptr)) return;  // handled below at the exact kink
    if (!f.eval(x).is_finite()) return;
    const Subdifferential1D sub = subdifferential_1d(f, x);
    g.push_back({x, sub.slope});
  });

  const double out_lo = out_grid.axes[0].lo;
  const double out_hi = out_grid.axes[0].hi;
  const double h_out = out_grid.spacing(0);
  for (double b : f.breakpoints) {
    if (b < in_grid.axes[0].lo || b > in_grid.axes[0].hi) continue;
    if (!f.eval(b).is_finite()) continue;
    const Subdifferential1D sub = subdifferential_1d(f, b);
    switch (sub.kind) {
      case Subdifferential1D::Kind::Singleton:
        g.push_back({b, sub.slope});
        break;
      case Subdifferential1D::Kind::Interval: {
        const double lo = sub.lo.is_finite() ? std::max(sub.lo.value(), out_lo) : out_lo;
        const double hi = sub.hi.is_finite() ? std::min(sub.hi.value(), out_hi) : out_hi;
        if (lo > hi) break;
        const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / h_out)));
        for (int i = 0; i <= n; ++i) g.push_back({b, lo + (hi - lo) * i / n});
        break;
      }
      case Subdifferential1D::Kind::SlopePair:
        g.push_back({b, sub.slopes[0]});
        g.push_back({b, sub.slopes[1]});
        break;
    }
  }
  return g.deduplicated();
}

CompositeStationarityBound composite_stationarity_bound(
    const PiecewiseSmooth1D& phi, const PiecewiseSmooth1D& psi, const VectorField& f,
    const VectorField& g, double rho, const GridSpec& x_grid, const GridSpec& z_grid,
    const GridSpec& slope_grid, bool cross_check) {
  if (f.out_dim != 1 || g.out_dim != 1 || f.in_dim != g.in_dim)
    throw ValidationError("composite_stationarity_bound: fields must be scalar with equal input dimension");
  if (!f.has_jacobian() || !g.has_jacobian())
    throw ValidationError("composite_stationarity_bound: jacobian required");
  if (x_grid.dim() != f.in_dim || z_grid.dim() != 1 || slope_grid.dim() != 1)
    throw ValidationError("composite_stationarity_bound: grid dimensions");
  const int n = f.in_dim;

  CompositeStationarityBound rep;
  bool any = false;
  for_each_grid_point(x_grid, [&](std::span<const double> x) {
    if (euclidean_norm(x) > rho) return;
    any = true;
    const double fv = f.eval(x)[0];
    const double gv = g.eval(x)[0];
    rep.sup_value_gap = std::max(rep.sup_value_gap, std::fabs(fv - gv));
    const std::vector<std::vector<double>> jf = f.jacobian(x);
    const std::vector<std::vector<double>> jg = g.jacobian(x);
    double fro = 0.0;
    for (int c = 0; c < n; ++c) {
      const double d = jf[0][static_cast<size_t>(c)] - jg[0][static_cast<size_t>(c)];
      fro += d * d;
    }
    rep.sup_jacobian_gap = std::max(rep.sup_jacobian_gap, std::sqrt(fro));
  });
  if (!any) throw NumericalError("composite_stationarity_bound: no grid points inside the ball");

  const GridSpec z2 = GridSpec::uniform(-2.0 * rho, 2.0 * rho, z_grid.axes[0].steps, 1);
  const PointCloud gphi = subgradient_graph_1d(phi, z2, slope_grid);
  const PointCloud gpsi = subgradient_graph_1d(psi, z2, slope_grid);
  rep.dl_subgradient = to_double(truncated_hausdorff(gphi, gpsi, 2.0 * rho, graph_norm(1, 1)));

  rep.bound = std::max(rep.sup_value_gap + rep.dl_subgradient, rho * rep.sup_jacobian_gap);

  if (!cross_check) return rep;
  rep.cross_checked = true;

  // Stationarity system of phi(F(x)): (x,y,z) -> {F(x)-z} x {d(phi)(z)-y} x {JF^T y}.
  auto assemble = [n](const PiecewiseSmooth1D& h, const VectorField& field) {
    SetValuedMap m;
    m.in_dim = n + 2;
    m.out_dim = n + 2;
    m.eval = [n, h, field](std::span<const double> in) {
      const std::span<const double> x = in.subspan(0, static_cast<size_t>(n));
      const double y = in[static_cast<size_t>(n)];
      const double z = in[static_cast<size_t>(n) + 1];
      PointCloud out(n + 2);
      if (!h.eval(z).is_finite()) return out;
      const Subdifferential1D sub = subdifferential_1d(h, z);
      std::vector<double> slopes;
      switch (sub.kind) {
        case Subdifferential1D::Kind::Singleton:
          slopes = {sub.slope};
          break;
        case Subdifferential1D::Kind::Interval:
          if (!sub.lo.is_finite() || !sub.hi.is_finite()) return out;
          slopes = {sub.lo.value(), 0.5 * (sub.lo.value() + sub.hi.value()), sub.hi.value()};
          break;
        case Subdifferential1D::Kind::SlopePair:
          slopes = {sub.slopes[0], sub.slopes[1]};
          break;
      }
      const double fx = field.eval(x)[0];
      const std::vector<std::vector<double>> jf = field.jacobian(x);
      std::vector<double> row(static_cast<size_t>(n) + 2);
      for (double s : slopes) {
        row[0] = fx - z;
        row[1] = s - y;
        for (int i = 0; i < n; ++i)
          row[static_cast<size_t>(i) + 2] = jf[0][static_cast<size_t>(i)] * y;
        out.push_back(row);
      }
      return out;
    };
    return m;
  };

  GridSpec in_c(capped(x_grid, 8));
  in_c.axes.push_back(capped(slope_grid, 8).axes[0]);  // y
  in_c.axes.push_back(capped(z_grid, 8).axes[0]);      // z
  const NormSpec norm = NormSpec::product({{n, NormSpec::euclidean()},
                                           {1, NormSpec::euclidean()},
                                           {1, NormSpec::euclidean()},
                                           {1, NormSpec::euclidean()},
                                           {1, NormSpec::euclidean()},
                                           {n, NormSpec::euclidean()}});
  const PointCloud gs = sample_graph(assemble(phi, f), in_c, in_c);
  const PointCloud gt = sample_graph(assemble(psi, g), in_c, in_c);
  rep.sampled_dl = to_double(truncated_hausdorff(gs, gt, rho, norm));

  double h_max = 0.0;
  for (const auto& ax : in_c.axes) h_max = std::max(h_max, (ax.hi - ax.lo) / ax.steps);
  rep.slack = 2.0 * h_max * (1.0 + std::sqrt(static_cast<double>(n)));
  rep.dominates = rep.sampled_dl <= rep.bound + rep.slack;
  return rep;
}

SharpnessPair make_sharpness_pair(const GridSpec& value_grid) {
  value_grid.validate("make_sharpness_pair");
  if (value_grid.dim() != 1) throw ValidationError("make_sharpness_pair: value grid must be 1-D");
  const PointCloud values = grid_cloud(value_grid);

  SharpnessPair pair;
  pair.s.in_dim = pair.s.out_dim = 1;
  pair.s.eval = [values](std::span<const double> x) {
    PointCloud out(1);
    if (x[0] < -1e-12 || x[0] > 1.0 + 1e-12) return out;  // dom S = [0,1]
    for (size_t i = 0; i < values.size(); ++i)
      if (values[i][0] >= x[0] - 1e-12) out.push_back(values[i]);
    return out;
  };
  pair.t.in_dim = pair.t.out_dim = 1;
  pair.t.eval = [values](std::span<const double> x) {
    PointCloud out(1);
    if (x[0] < 1.0 - 1e-12 || x[0] > 2.0 + 1e-12) return out;  // dom T = [1,2]
    // Values (1, inf) sampled closed from the first grid level above 1.
    for (size_t i = 0; i < values.size(); ++i)
      if (values[i][0] > 1.0 + 1e-12) out.push_back(values[i]);
    return out;
  };
  return pair;
}

SetValuedMap make_feasible_set_map(const GridSpec& x_grid) {
  x_grid.validate("make_feasible_set_map");
  if (x_grid.dim() != 1) throw ValidationError("make_feasible_set_map: x grid must be 1-D");
  const PointCloud xs = grid_cloud(x_grid);
  SetValuedMap s;
  s.in_dim = s.out_dim = 1;
  s.eval = [xs](std::span<const double> u) {
    PointCloud out(1);
    for (size_t i = 0; i < xs.size(); ++i)
      if (u[0] * xs[i][0] <= 1.0 + 1e-12) out.push_back(xs[i]);
    return out;
  };
  return s;
}

SetValuedMap make_sin_homotopy_map() {
  return make_single_valued(
      1, 1,
      [](std::span<const double> x) {
        return std::vector<double>{x[0] + std::sin(x[0]) + 1.0};
      },
      [](std::span<const double> x) {
        return std::vector<std::vector<double>>{{1.0 + std::cos(x[0])}};
      });
}

VectorField make_affine_field(std::vector<std::vector<double>> m, std::vector<double> q) {
  if (m.empty() || m.size() != q.size())
    throw ValidationError("make_affine_field: matrix and offset sizes disagree");
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != cols)
      throw ValidationError("make_affine_field: ragged matrix");
  VectorField f;
  f.in_dim = cols;
  f.out_dim = rows;
  f.eval = [m, q, rows, cols](std::span<const double> x) {
    std::vector<double> out(static_cast<size_t>(rows));
    for (int r = 0; r < rows; ++r) {
      double s = q[static_cast<size_t>(r)];
      for (int c = 0; c < cols; ++c) s += m[static_cast<size_t>(r)][static_cast<size_t>(c)] * x[static_cast<size_t>(c)];
      out[static_cast<size_t>(r)] = s;
    }
    return out;
  };
  f.jacobian = [m](std::span<const double>) { return m; };
  return f;
}

VectorField canonical_lcp() {
  return make_affine_field({{2.0, 1.0}, {1.0, 2.0}}, {-1.0, -1.0});
}

}  // namespace setconv
