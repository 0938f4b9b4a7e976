#include "setconv/epi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "setconv/distance.hpp"
#include "setconv/errors.hpp"

namespace setconv {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> make_alpha_levels(double rho, double spacing) {
  const int cells = std::max(1, static_cast<int>(std::ceil(2.0 * rho / spacing - 1e-12)));
  std::vector<double> levels(static_cast<size_t>(cells) + 1);
  for (int i = 0; i <= cells; ++i)
    levels[static_cast<size_t>(i)] =
        i == cells ? rho : -rho + static_cast<double>(i) * (2.0 * rho) / cells;
  return levels;
}

struct GridValues {
  PointCloud pts;
  std::vector<ExtReal> vals;
};

GridValues grid_values(const ScalarField& f, const GridSpec& grid) {
  if (f.dim != grid.dim())
    throw ValidationError("grid_values: field dimension " + std::to_string(f.dim) +
                          " does not match grid dimension " + std::to_string(grid.dim()));
  GridValues gv{grid_cloud(grid), {}};
  gv.vals.reserve(gv.pts.size());
  for (size_t i = 0; i < gv.pts.size(); ++i) gv.vals.push_back(f.eval(gv.pts[i]));
  return gv;
}

/// dist from (x, alpha) to the columns of e under max{x_norm, |.|}.
/// Early abort: stop once the running min cannot raise `floor`.
double point_to_columns(std::span<const double> x, double alpha, const EpiCloud& e,
                        const NormSpec& x_norm, double floor) {
  double best = kInf;
  for (size_t j = 0; j < e.columns.size(); ++j) {
    const double dx = x_norm.distance(x, e.columns[j]);
    const double dalpha = std::max(0.0, e.column_lo[j] - alpha);
    best = std::min(best, std::max(dx, dalpha));
    if (best <= floor) break;
  }
  return best;
}

/// exs(materialize(a); columns of b) via column bottoms: for fixed x' the
/// distance max{||x-x'||, (lo'-alpha)^+} is nonincreasing in alpha, hence so
/// is the min over x', so each window column's sup sits at its bottom point.
/// Equals the brute-force loop over a's materialized points. Sources are a's
/// window columns only; targets are all of b's columns, because truncation
/// never clips the set an excess is measured against.
double excess_columns(const EpiCloud& a, const EpiCloud& b, const NormSpec& x_norm) {
  double worst = 0.0;
  for (size_t i = 0; i < a.columns.size(); ++i) {
    if (!a.column_window[i]) continue;
    const double d = point_to_columns(a.columns[i], a.column_lo[i], b, x_norm, worst);
    worst = std::max(worst, d);
  }
  return worst;
}

void check_compatible(const EpiCloud& a, const EpiCloud& b) {
  for (const EpiCloud* e : {&a, &b})
    if (e->columns.size() != e->column_lo.size() ||
        e->columns.size() != e->column_window.size())
      throw ValidationError("epi_distance_cloud: malformed epigraph sample");
  if (a.x_dim != b.x_dim)
    throw ValidationError("epi_distance_cloud: epigraph dimensions differ");
  if (a.rho != b.rho || a.alpha_levels.size() != b.alpha_levels.size() ||
      (!a.alpha_levels.empty() && (a.alpha_levels.front() != b.alpha_levels.front() ||
                                   a.alpha_levels.back() != b.alpha_levels.back())))
    throw ValidationError("epi_distance_cloud: epigraphs use different alpha grids");
}

GridSpec box_grid(double radius, const GridSpec& tmpl) {
  GridSpec g;
  g.axes.reserve(tmpl.axes.size());
  for (int i = 0; i < tmpl.dim(); ++i) {
    GridSpec::Axis a;
    a.lo = -radius;
    a.hi = radius;
    a.steps = std::max(1, static_cast<int>(std::ceil(2.0 * radius / tmpl.spacing(i) - 1e-12)));
    g.axes.push_back(a);
  }
  return g;
}

double sup_over_ball(const GridSpec& grid, double radius,
                     const std::function<double(std::span<const double>)>& fn) {
  const NormSpec eucl = NormSpec::euclidean();
  double best = -kInf;
  for_each_grid_point(grid, [&](std::span<const double> x) {
    if (eucl(x) <= radius) best = std::max(best, fn(x));
  });
  if (best == -kInf) throw NumericalError("sup_over_ball: no grid points inside the ball");
  return best;
}

}  // namespace

bool EpiCloud::empty() const {
  for (char w : column_window)
    if (w) return false;
  return true;
}

size_t EpiCloud::point_count() const {
  size_t n = 0;
  for (size_t j = 0; j < column_lo.size(); ++j) {
    if (!column_window[j]) continue;
    const auto it = std::lower_bound(alpha_levels.begin(), alpha_levels.end(), column_lo[j]);
    n += static_cast<size_t>(alpha_levels.end() - it);
  }
  return n;
}

PointCloud EpiCloud::materialize() const {
  PointCloud out(x_dim + 1);
  std::vector<double> buf(static_cast<size_t>(x_dim) + 1);
  for (size_t j = 0; j < columns.size(); ++j) {
    if (!column_window[j]) continue;
    std::span<const double> x = columns[j];
    std::copy(x.begin(), x.end(), buf.begin());
    for (double level : alpha_levels) {
      if (level < column_lo[j]) continue;
      buf.back() = level;
      out.push_back(buf);
    }
  }
  return out;
}

EpiCloud sample_epigraph(const ScalarField& f, const GridSpec& grid, double rho,
                         const NormSpec& x_norm, double alpha_spacing) {
  grid.validate("sample_epigraph");
  if (f.dim != grid.dim())
    throw ValidationError("sample_epigraph: field and grid dimensions differ");
  if (!(rho > 0)) throw ValidationError("sample_epigraph: rho must be positive");

  EpiCloud e;
  e.x_dim = grid.dim();
  e.rho = rho;
  e.alpha_levels = make_alpha_levels(rho, alpha_spacing > 0 ? alpha_spacing : grid.max_spacing());
  e.columns = PointCloud(e.x_dim);

  for_each_grid_point(grid, [&](std::span<const double> x) {
    const ExtReal v = f.eval(x);
    if (v.is_pos_inf()) return;  // nothing of epi f sits above this x
    const double lo_val = std::max(v.value(), -rho);
    const bool in_window = x_norm(x) <= rho && !(v > ExtReal(rho));
    // Window bottoms snap up to the shared level grid; bottoms above rho
    // have no level to snap to and keep the raw value.
    const auto it = std::lower_bound(e.alpha_levels.begin(), e.alpha_levels.end(), lo_val);
    e.columns.push_back(x);
    e.column_lo.push_back(it != e.alpha_levels.end() ? *it : lo_val);
    e.column_window.push_back(in_window ? 1 : 0);
  });
  return e;
}

double epi_distance_cloud(const EpiCloud& a, const EpiCloud& b, const NormSpec& x_norm) {
  if (a.empty() && b.empty())
    throw NumericalError("epi_distance_cloud: both epigraph samples are empty in the window");
  if (a.empty() || b.empty()) return kInf;
  check_compatible(a, b);
  return std::max(excess_columns(a, b, x_norm), excess_columns(b, a, x_norm));
}

double epi_distance_cloud(const ScalarField& f, const ScalarField& g, const GridSpec& grid,
                          double rho, const NormSpec& x_norm, double alpha_spacing) {
  const EpiCloud a = sample_epigraph(f, grid, rho, x_norm, alpha_spacing);
  const EpiCloud b = sample_epigraph(g, grid, rho, x_norm, alpha_spacing);
  return epi_distance_cloud(a, b, x_norm);
}

double epi_distance_kenmochi(const ScalarField& f, const ScalarField& g, const GridSpec& grid,
                             double rho, const NormSpec& x_norm, double eta_tol) {
  grid.validate("epi_distance_kenmochi");
  if (!(rho > 0)) throw ValidationError("epi_distance_kenmochi: rho must be positive");
  if (eta_tol <= 0) eta_tol = grid.max_spacing() / 2.0;

  const GridValues fv = grid_values(f, grid);
  const GridValues gv = grid_values(g, grid);
  const size_t n = fv.pts.size();

  std::vector<char> in_ball(n);
  for (size_t i = 0; i < n; ++i) in_ball[i] = x_norm(fv.pts[i]) <= rho ? 1 : 0;

  bool f_nonempty = false;
  bool g_nonempty = false;
  for (size_t i = 0; i < n; ++i) {
    if (in_ball[i] && fv.vals[i] <= ExtReal(rho)) f_nonempty = true;
    if (in_ball[i] && gv.vals[i] <= ExtReal(rho)) g_nonempty = true;
  }
  if (!f_nonempty && !g_nonempty)
    throw NumericalError("epi_distance_kenmochi: both epigraph samples are empty in the window");
  if (!f_nonempty || !g_nonempty) return kInf;

  const auto side_ok = [&](const GridValues& from, const GridValues& to, double eta) {
    for (size_t i = 0; i < n; ++i) {
      if (!in_ball[i] || !(from.vals[i] <= ExtReal(rho))) continue;
      const double target = std::max(from.vals[i].value(), -rho) + eta;
      bool found = false;
      for (size_t j = 0; j < n; ++j) {
        if (to.vals[j] <= ExtReal(target) && x_norm.distance(from.pts[i], to.pts[j]) <= eta) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  };
  const auto ok = [&](double eta) { return side_ok(fv, gv, eta) && side_ok(gv, fv, eta); };

  double lo = 0.0;
  double hi = 2.0 * rho;
  if (ok(lo)) return 0.0;
  while (hi - lo > eta_tol) {
    const double mid = 0.5 * (lo + hi);
    if (ok(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

double hypo_distance(const ScalarField& f, const ScalarField& g, const GridSpec& grid,
                     double rho, const NormSpec& x_norm, double alpha_spacing) {
  return epi_distance_cloud(make_negate(f), make_negate(g), grid, rho, x_norm, alpha_spacing);
}

MinimaBoundsReport minima_bounds_report(const ScalarField& f, const ScalarField& g,
                                        const GridSpec& grid, double rho, double epsilon,
                                        const NormSpec& x_norm) {
  grid.validate("minima_bounds_report");
  if (epsilon < 0) throw ValidationError("minima_bounds_report: epsilon must be nonnegative");
  const GridValues fv = grid_values(f, grid);
  const GridValues gv = grid_values(g, grid);

  const auto grid_inf = [](const GridValues& v) {
    ExtReal m = ExtReal::infinity();
    for (const ExtReal& x : v.vals) m = ext_min(m, x);
    if (!m.is_finite())
      throw NumericalError("minima_bounds_report: no finite values in the window");
    return m.value();
  };

  MinimaBoundsReport r;
  r.rho = rho;
  r.epsilon = epsilon;
  r.h = grid.max_spacing();
  r.inf_f = grid_inf(fv);
  r.inf_g = grid_inf(gv);
  r.dl = epi_distance_cloud(f, g, grid, rho, x_norm);
  r.value_gap = std::fabs(r.inf_f - r.inf_g);
  r.value_bound_ok = r.value_gap <= r.dl + 2.0 * r.h;

  r.hyp_inf_f_in_range = r.inf_f >= -rho && r.inf_f < rho - epsilon;
  r.hyp_inf_g_in_range = r.inf_g >= -rho && r.inf_g < rho - epsilon;

  const auto collect = [&](const GridValues& v, double cutoff, bool ball_only) {
    PointCloud out(grid.dim());
    for (size_t i = 0; i < v.pts.size(); ++i) {
      if (!(v.vals[i] <= ExtReal(cutoff))) continue;
      if (ball_only && x_norm(v.pts[i]) > rho) continue;
      out.push_back(v.pts[i]);
    }
    return out;
  };

  const double tiny_f = 1e-12 * (1.0 + std::fabs(r.inf_f));
  const double tiny_g = 1e-12 * (1.0 + std::fabs(r.inf_g));
  const PointCloud argmin_f = collect(fv, r.inf_f + tiny_f, false);
  const PointCloud argmin_g = collect(gv, r.inf_g + tiny_g, false);
  r.argmin_f.assign(argmin_f[0].begin(), argmin_f[0].end());
  r.argmin_g.assign(argmin_g[0].begin(), argmin_g[0].end());
  r.hyp_argmin_f_in_ball = !truncate(argmin_f, rho, x_norm).empty();
  r.hyp_argmin_g_in_ball = !truncate(argmin_g, rho, x_norm).empty();

  r.delta = epsilon + 2.0 * r.dl + 3.0 * r.h;
  const PointCloud near_g = collect(gv, r.inf_g + epsilon, true);
  const PointCloud near_f = collect(fv, r.inf_f + r.delta, false);
  r.eps_argmin_excess = excess(near_g, near_f, x_norm).value();
  r.argmin_bound_ok = r.eps_argmin_excess <= r.dl + 2.0 * r.h;
  return r;
}

CompositeEpiBoundReport composite_epi_bound(const ScalarField& f0, const ScalarField& g0,
                                            const VectorField& F, const VectorField& G,
                                            const ScalarField& h, const Modulus& kappa,
                                            const Modulus& lambda, double rho,
                                            const GridSpec& grid_template) {
  if (F.in_dim != G.in_dim || F.out_dim != G.out_dim)
    throw ValidationError("composite_epi_bound: F and G shapes differ");
  if (f0.dim != F.in_dim || g0.dim != F.in_dim)
    throw ValidationError("composite_epi_bound: base objectives must live on the map domain");
  if (h.dim != F.out_dim)
    throw ValidationError("composite_epi_bound: outer function dimension must match map range");
  const NormSpec eucl = NormSpec::euclidean();
  const int m = F.out_dim;

  const auto h_of = [&](const VectorField& M, std::span<const double> x) {
    const std::vector<double> y = M.eval(x);
    const ExtReal v = h.eval(y);
    if (!v.is_finite()) throw NumericalError("composite_epi_bound: h o F is not finite");
    return v.value();
  };

  CompositeEpiBoundReport r;
  r.rho = rho;

  const GridSpec g_rho = box_grid(rho, grid_template);
  const double sup_hF = sup_over_ball(g_rho, rho, [&](std::span<const double> x) {
    return std::fabs(h_of(F, x));
  });
  const double sup_hG = sup_over_ball(g_rho, rho, [&](std::span<const double> x) {
    return std::fabs(h_of(G, x));
  });
  r.rho_bar = rho + std::max(sup_hF, sup_hG);

  const GridSpec g_bar = box_grid(r.rho_bar, grid_template);
  r.dl_f0_g0 = epi_distance_cloud(f0, g0, g_bar, r.rho_bar, eucl);
  r.rho_hat = rho + r.dl_f0_g0 + g_bar.max_spacing();

  const GridSpec g_hat = box_grid(r.rho_hat, grid_template);
  r.rho_star = sup_over_ball(g_hat, r.rho_hat, [&](std::span<const double> x) {
    return std::max(eucl(F.eval(x)), eucl(G.eval(x)));
  });

  r.sup_gap = sup_over_ball(g_rho, rho, [&](std::span<const double> x) {
    const std::vector<double> a = F.eval(x);
    const std::vector<double> b = G.eval(x);
    return eucl.distance(a, b);
  });

  r.kappa_at_rho_star = kappa(r.rho_star);
  r.lambda_at_rho_hat = lambda(r.rho_hat);
  r.bound = (1.0 + std::sqrt(static_cast<double>(m)) * r.kappa_at_rho_star * r.lambda_at_rho_hat) *
                r.dl_f0_g0 +
            r.kappa_at_rho_star * r.sup_gap;

  const auto compose = [&](const ScalarField& base, const VectorField& M) {
    ScalarField out;
    out.dim = base.dim;
    auto b = std::make_shared<ScalarField>(base);
    auto hh = std::make_shared<ScalarField>(h);
    const VectorField* map = &M;
    out.eval = [b, hh, map](std::span<const double> x) {
      const ExtReal v0 = b->eval(x);
      if (v0.is_pos_inf()) return ExtReal::infinity();
      const std::vector<double> y = map->eval(x);
      return v0 + hh->eval(y);
    };
    return out;
  };
  const ScalarField comp_f = compose(f0, F);
  const ScalarField comp_g = compose(g0, G);
  r.dl_measured = epi_distance_kenmochi(comp_f, comp_g, g_rho, rho, eucl);
  r.slack = 2.0 * g_rho.max_spacing() + g_rho.max_spacing() / 2.0;
  r.dominates = r.dl_measured <= r.bound + r.slack;
  return r;
}

TightnessReport tightness_report(const FunctionSequence& seq, const std::vector<double>& epsilons,
                                 const std::vector<GridSpec>& boxes,
                                 const std::vector<int>& nu_schedule) {
  if (!seq.generator) throw ValidationError("tightness_report: sequence has no generator");
  if (boxes.size() < 2)
    throw ValidationError("tightness_report: need at least one candidate box plus the surrogate");
  if (epsilons.empty() || nu_schedule.empty())
    throw ValidationError("tightness_report: empty epsilon list or nu schedule");

  TightnessReport r;
  r.epsilons = epsilons;
  r.nu_schedule = nu_schedule;
  r.inf_table.assign(boxes.size(), std::vector<double>(nu_schedule.size(), 0.0));

  for (size_t k = 0; k < nu_schedule.size(); ++k) {
    const ScalarField f = seq.generator(nu_schedule[k]);
    for (size_t b = 0; b < boxes.size(); ++b) {
      ExtReal m = ExtReal::infinity();
      for_each_grid_point(boxes[b], [&](std::span<const double> x) { m = ext_min(m, f.eval(x)); });
      if (!m.is_finite())
        throw NumericalError("tightness_report: no finite values in box " + std::to_string(b) +
                             " at nu=" + std::to_string(nu_schedule[k]));
      r.inf_table[b][k] = m.value();
    }
  }

  const std::vector<double>& surrogate = r.inf_table.back();
  r.tight = true;
  for (double eps : epsilons) {
    int witness = -1;
    int nu_eps = -1;
    for (size_t b = 0; b + 1 < boxes.size() && witness < 0; ++b) {
      for (size_t start = 0; start < nu_schedule.size(); ++start) {
        bool ok = true;
        for (size_t k = start; k < nu_schedule.size(); ++k)
          if (r.inf_table[b][k] > surrogate[k] + eps) {
            ok = false;
            break;
          }
        if (ok) {
          witness = static_cast<int>(b);
          nu_eps = nu_schedule[start];
          break;
        }
      }
    }
    r.witness_box.push_back(witness);
    r.nu_eps.push_back(nu_eps);
    if (witness < 0) r.tight = false;
  }
  return r;
}

EpiConsequencesReport epi_consequences_report(const FunctionSequence& seq, const ScalarField& f,
                                              const GridSpec& grid, double rho,
                                              const std::vector<int>& nu_schedule,
                                              const std::vector<double>& eps_schedule,
                                              double fixed_eps, const NormSpec& x_norm,
                                              double tol) {
  grid.validate("epi_consequences_report");
  if (nu_schedule.empty() || eps_schedule.size() != nu_schedule.size())
    throw ValidationError("epi_consequences_report: eps schedule must match nu schedule");
  if (tol <= 0) tol = 3.0 * grid.max_spacing();

  EpiConsequencesReport r;
  r.nu_schedule = nu_schedule;
  r.eps_schedule = eps_schedule;
  r.fixed_eps = fixed_eps;
  r.tol = tol;

  const GridValues fv = grid_values(f, grid);
  ExtReal inf_l = ExtReal::infinity();
  for (const ExtReal& v : fv.vals) inf_l = ext_min(inf_l, v);
  if (!inf_l.is_finite())
    throw NumericalError("epi_consequences_report: limit function has no finite values");
  r.inf_limit = inf_l.value();

  const auto in_window = [&](std::span<const double> p) { return x_norm(p) <= rho; };

  PointCloud argmin_f(grid.dim());
  const double tiny = 1e-12 * (1.0 + std::fabs(r.inf_limit));
  for (size_t i = 0; i < fv.pts.size(); ++i)
    if (in_window(fv.pts[i]) && fv.vals[i] <= ExtReal(r.inf_limit + tiny))
      argmin_f.push_back(fv.pts[i]);

  std::vector<std::vector<ExtReal>> vals_nu(nu_schedule.size());
  r.inf_nu.resize(nu_schedule.size());
  for (size_t k = 0; k < nu_schedule.size(); ++k) {
    const ScalarField fk = seq.generator(nu_schedule[k]);
    if (fk.dim != grid.dim())
      throw ValidationError("epi_consequences_report: sequence dimension mismatch");
    std::vector<ExtReal>& vk = vals_nu[k];
    vk.reserve(fv.pts.size());
    ExtReal m = ExtReal::infinity();
    for (size_t i = 0; i < fv.pts.size(); ++i) {
      vk.push_back(fk.eval(fv.pts[i]));
      m = ext_min(m, vk.back());
    }
    if (!m.is_finite())
      throw NumericalError("epi_consequences_report: f^nu has no finite values at nu=" +
                           std::to_string(nu_schedule[k]));
    r.inf_nu[k] = m.value();
  }

  const size_t tail_from = nu_schedule.size() / 2;
  double tail_max = -kInf;
  for (size_t k = tail_from; k < nu_schedule.size(); ++k) tail_max = std::max(tail_max, r.inf_nu[k]);
  r.value_limsup_ok = tail_max <= r.inf_limit + tol;
  r.final_inf_gap = std::fabs(r.inf_nu.back() - r.inf_limit);
  r.inf_converges = r.final_inf_gap <= tol;

  const auto eps_cloud = [&](size_t k, double eps) {
    PointCloud out(grid.dim());
    for (size_t i = 0; i < fv.pts.size(); ++i)
      if (in_window(fv.pts[i]) && vals_nu[k][i] <= ExtReal(r.inf_nu[k] + eps))
        out.push_back(fv.pts[i]);
    return out;
  };

  const auto two_sided = [&](const std::vector<double>& eps_by_k, double& outer_v, double& inner_v) {
    std::vector<PointCloud> clouds;
    clouds.reserve(nu_schedule.size());
    for (size_t k = 0; k < nu_schedule.size(); ++k) clouds.push_back(eps_cloud(k, eps_by_k[k]));
    // Outer estimate of the near-argmin sequence, checked against argmin f.
    outer_v = 0.0;
    for (size_t i = 0; i < fv.pts.size(); ++i) {
      if (!in_window(fv.pts[i])) continue;
      double closest = kInf;
      for (size_t k = tail_from; k < clouds.size(); ++k)
        closest = std::min(closest, point_to_set_distance(fv.pts[i], clouds[k], x_norm).value());
      if (closest <= tol)
        outer_v = std::max(outer_v, point_to_set_distance(fv.pts[i], argmin_f, x_norm).value());
    }
    // Inner inclusion: argmin f probes must stay near every tail cloud.
    inner_v = 0.0;
    for (size_t i = 0; i < argmin_f.size(); ++i)
      for (size_t k = tail_from; k < clouds.size(); ++k)
        inner_v = std::max(inner_v,
                           point_to_set_distance(argmin_f[i], clouds[k], x_norm).value());
  };

  two_sided(eps_schedule, r.outer_violation, r.inner_violation);
  r.outer_inclusion_ok = r.outer_violation <= tol;
  double fixed_inner = 0.0;
  double fixed_outer = 0.0;
  std::vector<double> fixed_eps_by_k(nu_schedule.size(), fixed_eps);
  two_sided(fixed_eps_by_k, fixed_outer, fixed_inner);
  r.inner_violation = fixed_inner;
  r.inner_inclusion_ok = fixed_inner <= tol;

  r.best_deviation = kInf;
  for (double c : {0.5, 1.0, 2.0, 4.0}) {
    for (double beta : {0.25, 0.5, 1.0}) {
      std::vector<double> eps_by_k(nu_schedule.size());
      for (size_t k = 0; k < nu_schedule.size(); ++k)
        eps_by_k[k] = c * std::pow(static_cast<double>(nu_schedule[k]), -beta);
      double ov = 0.0;
      double iv = 0.0;
      two_sided(eps_by_k, ov, iv);
      const double dev = std::max(ov, iv);
      if (dev < r.best_deviation) {
        r.best_deviation = dev;
        r.best_c = c;
        r.best_beta = beta;
      }
    }
  }
  return r;
}

}  // namespace setconv
