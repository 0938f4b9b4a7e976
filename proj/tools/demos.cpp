#include "demos.hpp"

#include <cmath>
#include <functional>

#include "setconv/distance.hpp"
#include "setconv/epi.hpp"
#include "setconv/errors.hpp"
#include "setconv/geneq.hpp"
#include "setconv/registry.hpp"
#include "setconv/set_limits.hpp"
#include "setconv/vargeo.hpp"

namespace setconv::demos {

namespace {

ScalarField resolve_field(const std::string& text) {
  return parse_scalar_field_json(!text.empty() && text.front() == '{' ? text
                                                                      : read_text_file(text));
}

PointCloud load_cloud(const std::string& path) { return parse_cloud_json(read_text_file(path)); }

PointCloud recentered(const PointCloud& c, const std::vector<double>& center) {
  if (center.empty()) return c;
  if (static_cast<int>(center.size()) != c.dim())
    throw ValidationError("center: dimension does not match the clouds");
  PointCloud out(c.dim());
  std::vector<double> p(center.size());
  for (size_t i = 0; i < c.size(); ++i) {
    for (size_t k = 0; k < center.size(); ++k) p[k] = c[i][k] - center[k];
    out.push_back(p);
  }
  return out;
}

bool contains_point(const PointCloud& c, std::span<const double> x) {
  for (size_t i = 0; i < c.size(); ++i) {
    bool same = true;
    for (int k = 0; k < c.dim(); ++k) same = same && c[i][k] == x[k];
    if (same) return true;
  }
  return false;
}

double golden_min(const std::function<double(double)>& f, double lo, double hi,
                  double* arg_out) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  if (arg_out) *arg_out = x;
  return f(x);
}

/// Grid minimizer of a 1-D field (finite values only), polished by a golden
/// search on the bracketing cells.
void minimize_field_1d(const ScalarField& f, const GridSpec& grid, double* argmin,
                       double* inf_value, bool polish) {
  double best = std::numeric_limits<double>::infinity();
  double best_x = 0.0;
  bool any = false;
  for_each_grid_point(grid, [&](std::span<const double> x) {
    const ExtReal v = f(x);
    if (!v.is_finite()) return;
    if (!any || v.value() < best) {
      best = v.value();
      best_x = x[0];
      any = true;
    }
  });
  if (!any) throw NumericalError("minimize_field_1d: no finite values on the grid");
  if (polish) {
    const double h = grid.spacing(0);
    auto eval = [&f](double x) {
      const ExtReal v = f(x);
      return v.is_finite() ? v.value() : std::numeric_limits<double>::infinity();
    };
    best = golden_min(eval, best_x - h, best_x + h, &best_x);
  }
  *argmin = best_x;
  *inf_value = best;
}

std::string join_numbers(std::span<const double> v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += format_number(v[i]);
  }
  return out;
}

}  // namespace

void run_dist(DemoOptions& opts) {
  auto files = opts.files;
  if (opts.config.is_object() && opts.config.contains("files"))
    files = opts.config.at("files").get<std::vector<std::string>>();
  const std::string builtin = cfg_string(opts, "builtin", opts.builtin);
  const std::string center_arg = cfg_string(opts, "center", opts.center);

  PointCloud a(1), b(1);
  NormSpec norm = resolve_norm(opts);
  ReportTable t = make_table(opts, "dist");
  if (builtin == "sharpness") {
    GridSpec domain = GridSpec::uniform(0.0, 2.0, 200);
    GridSpec values = GridSpec::uniform(-4.0, 4.0, 800);
    if (opts.grids.size() >= 1) domain = resolve_grid(opts, domain);
    if (opts.grids.size() >= 2) {
      values.axes[0] = domain.axes[1];
      domain.axes.resize(1);
    }
    const SharpnessPair pair = make_sharpness_pair(values);
    a = sample_graph(pair.s, domain, values);
    b = sample_graph(pair.t, domain, values);
    norm = graph_norm(1, 1);  // graph space: max of the x and y blocks
    t.add_meta("builtin", "sharpness");
    t.add_meta("graph_norm", "max(euclidean x, euclidean y)");
    t.add_meta("domain_grid", grid_to_string(domain));
    t.add_meta("value_grid", grid_to_string(values));
  } else if (!builtin.empty()) {
    throw ValidationError("dist: unknown builtin '" + builtin + "'");
  } else {
    if (files.size() != 2)
      throw ValidationError("dist: provide two cloud files or --builtin sharpness");
    a = load_cloud(files[0]);
    b = load_cloud(files[1]);
    t.add_meta("file_a", files[0]);
    t.add_meta("file_b", files[1]);
  }
  if (!center_arg.empty()) {
    const auto center = parse_vector_arg(center_arg, "center");
    a = recentered(a, center);
    b = recentered(b, center);
    t.add_meta("center", center_arg);
  }

  const auto detail = truncated_hausdorff_detail(a, b, opts.rho, norm);
  const ExtReal e_ab = excess(truncate(a, opts.rho, norm), b, norm);
  const ExtReal e_ba = excess(truncate(b, opts.rho, norm), a, norm);
  t.add_meta("a_truncation_empty", detail.c_truncation_empty ? "true" : "false");
  t.add_meta("b_truncation_empty", detail.d_truncation_empty ? "true" : "false");
  t.columns = {"rho", "excess_ab", "excess_ba", "dl"};
  t.add_row({opts.rho, e_ab.value(), e_ba.value(), detail.value.value()});
  emit(opts, "dist", t);
}

void run_limits(DemoOptions& opts) {
  const std::string family = cfg_string(opts, "family", opts.family);
  auto nus = cfg_ints(opts, "nus", opts.nu_schedule);
  if (nus.empty()) nus = {5, 10, 20, 40, 80, 160};
  double tol = cfg_double(opts, "tol", opts.tol);
  const NormSpec norm = resolve_norm(opts);

  ReportTable t = make_table(opts, "limits");
  t.add_meta("family", family);
  std::vector<SvgSeries> series;

  if (family == "shrinking") {
    if (tol <= 0) tol = 0.055;
    SetSequence seq{1, [](int nu) {
                      PointCloud c(1);
                      for (int i = 0; i <= 40; ++i)
                        c.push_back({(1.0 + i / 40.0) / nu});
                      return c;
                    }};
    PointCloud limit(1);
    limit.push_back({0.0});
    PointCloud probes = grid_cloud(GridSpec::uniform(-0.25, 1.0, 100));
    const auto rep =
        set_convergence_report(seq, limit, probes, nus, tol, {opts.rho}, norm);
    t.add_meta("tol", tol);
    t.add_meta("verdict", rep.verdict ? "true" : "false");
    t.columns = {"probe_x", "nu", "dist_seq", "dist_limit", "deviation"};
    for (size_t p = 0; p < rep.probes.size(); ++p)
      for (size_t i = 0; i < rep.nu_schedule.size(); ++i)
        t.add_row({rep.probes[p][0], static_cast<double>(rep.nu_schedule[i]),
                   rep.dist_seq[p][i], rep.dist_limit[p],
                   std::fabs(rep.dist_seq[p][i] - rep.dist_limit[p])});
    SvgSeries dl{"dl to limit", {}, {}};
    for (size_t i = 0; i < rep.nu_schedule.size(); ++i) {
      dl.x.push_back(rep.nu_schedule[i]);
      dl.y.push_back(rep.dl_table[i][0]);
    }
    series.push_back(std::move(dl));
  } else if (family == "oddeven") {
    if (tol <= 0) tol = 0.02;
    SetSequence seq{1, [](int nu) {
                      PointCloud c(1);
                      if (nu % 2 == 1) {
                        c.push_back({0.0});
                      } else {
                        for (int i = 0; i <= 40; ++i) c.push_back({i / 40.0});
                      }
                      return c;
                    }};
    const int nu_max = nus.back();
    PointCloud probes = grid_cloud(GridSpec::uniform(-0.2, 1.2, 70));
    const PointCloud inner = inner_limit_estimate(seq, nu_max, probes, tol, norm);
    const PointCloud outer = outer_limit_estimate(seq, nu_max, probes, tol, norm);
    t.add_meta("tol", tol);
    t.add_meta("nu_max", static_cast<double>(nu_max));
    t.add_meta("inner_size", static_cast<double>(inner.size()));
    t.add_meta("outer_size", static_cast<double>(outer.size()));
    t.columns = {"probe_x", "in_inner", "in_outer"};
    for (size_t p = 0; p < probes.size(); ++p)
      t.add_row({probes[p][0], contains_point(inner, probes[p]) ? 1.0 : 0.0,
                 contains_point(outer, probes[p]) ? 1.0 : 0.0});
  } else if (family == "intersection") {
    if (tol <= 0) tol = 0.05;
    SetSequence c_seq{1, [](int nu) {
                        PointCloud c(1);
                        c.push_back({1.0 / nu});
                        return c;
                      }};
    SetSequence d_seq{1, [](int nu) {
                        PointCloud c(1);
                        c.push_back({-1.0 / nu});
                        return c;
                      }};
    SetSequence meet{1, [&](int nu) {
                       return intersect_exact(c_seq.generator(nu), d_seq.generator(nu));
                     }};
    const int nu_max = nus.back();
    PointCloud probes = grid_cloud(GridSpec::uniform(-0.5, 0.5, 100));
    const PointCloud outer_of_meet = outer_limit_estimate(meet, nu_max, probes, tol, norm);
    const PointCloud meet_of_outers =
        intersect_exact(outer_limit_estimate(c_seq, nu_max, probes, tol, norm),
                        outer_limit_estimate(d_seq, nu_max, probes, tol, norm));
    t.add_meta("tol", tol);
    t.add_meta("outer_of_intersections_size", static_cast<double>(outer_of_meet.size()));
    t.add_meta("intersection_of_outers_size", static_cast<double>(meet_of_outers.size()));
    t.columns = {"probe_x", "in_outer_of_intersections", "in_intersection_of_outers"};
    for (size_t p = 0; p < probes.size(); ++p)
      t.add_row({probes[p][0], contains_point(outer_of_meet, probes[p]) ? 1.0 : 0.0,
                 contains_point(meet_of_outers, probes[p]) ? 1.0 : 0.0});
  } else {
    throw ValidationError("limits: unknown family '" + family + "'");
  }
  emit(opts, "limits", t, series, "set-limit diagnostics");
}

void run_epi_dist(DemoOptions& opts) {
  const std::string f_text =
      cfg_string(opts, "f", opts.field_f.empty() ? R"({"kind": "penalty", "theta": 100})"
                                                 : opts.field_f);
  const std::string g_text =
      cfg_string(opts, "g", opts.field_g.empty() ? R"({"kind": "penalty", "limit": true})"
                                                 : opts.field_g);
  const ScalarField f = resolve_field(f_text);
  const ScalarField g = resolve_field(g_text);
  const GridSpec grid = resolve_grid(opts, GridSpec::uniform(-2.0, 2.0, 512, f.dim));
  const NormSpec norm = resolve_norm(opts);

  const double d_cloud = epi_distance_cloud(f, g, grid, opts.rho, norm);
  const double d_ken = epi_distance_kenmochi(f, g, grid, opts.rho, norm);

  ReportTable t = make_table(opts, "epi-dist", &grid);
  t.add_meta("f", f_text);
  t.add_meta("g", g_text);
  t.add_meta("h", grid.max_spacing());
  t.columns = {"rho", "cloud", "kenmochi", "gap"};
  t.add_row({opts.rho, d_cloud, d_ken, std::fabs(d_cloud - d_ken)});
  emit(opts, "epi-dist", t);
}

void run_epi_bounds(DemoOptions& opts) {
  const std::string f_text =
      cfg_string(opts, "f", opts.field_f.empty() ? R"({"kind": "penalty", "theta": 100})"
                                                 : opts.field_f);
  const std::string g_text =
      cfg_string(opts, "g", opts.field_g.empty() ? R"({"kind": "penalty", "limit": true})"
                                                 : opts.field_g);
  const double epsilon = cfg_double(opts, "epsilon", opts.epsilon);
  const ScalarField f = resolve_field(f_text);
  const ScalarField g = resolve_field(g_text);
  const GridSpec grid = resolve_grid(opts, GridSpec::uniform(-2.0, 2.0, 512, f.dim));
  const NormSpec norm = resolve_norm(opts);

  const auto rep = minima_bounds_report(f, g, grid, opts.rho, epsilon, norm);

  ReportTable t = make_table(opts, "epi-bounds", &grid);
  t.add_meta("f", f_text);
  t.add_meta("g", g_text);
  t.add_meta("epsilon", epsilon);
  t.add_meta("h", rep.h);
  t.add_meta("argmin_f", join_numbers(rep.argmin_f));
  t.add_meta("argmin_g", join_numbers(rep.argmin_g));
  t.add_meta("hyp_inf_f_in_range", rep.hyp_inf_f_in_range ? "true" : "false");
  t.add_meta("hyp_inf_g_in_range", rep.hyp_inf_g_in_range ? "true" : "false");
  t.add_meta("hyp_argmin_f_in_ball", rep.hyp_argmin_f_in_ball ? "true" : "false");
  t.add_meta("hyp_argmin_g_in_ball", rep.hyp_argmin_g_in_ball ? "true" : "false");
  t.columns = {"inf_f", "inf_g", "dl", "value_gap", "value_bound_ok",
               "delta", "eps_argmin_excess", "argmin_bound_ok"};
  t.add_row({rep.inf_f, rep.inf_g, rep.dl, rep.value_gap, rep.value_bound_ok ? 1.0 : 0.0,
             rep.delta, rep.eps_argmin_excess, rep.argmin_bound_ok ? 1.0 : 0.0});
  emit(opts, "epi-bounds", t);
}

void run_penalty(DemoOptions& opts) {
  auto thetas = cfg_doubles(opts, "thetas", opts.real_schedule);
  if (thetas.empty()) thetas = {1.0, 10.0, 100.0, 10000.0};
  const GridSpec grid = resolve_grid(opts, GridSpec::uniform(-2.0, 2.0, 512));
  const NormSpec norm = resolve_norm(opts);
  const ScalarField limit = penalty_limit_field();

  ReportTable t = make_table(opts, "penalty", &grid);
  t.add_meta("thetas", join_numbers(thetas));
  t.columns = {"theta", "argmin", "inf", "dl"};
  SvgSeries trend{"dl(epi f_theta, epi limit)", {}, {}};
  for (double theta : thetas) {
    const ScalarField f = penalty_field(theta);
    double argmin = 0, inf_value = 0;
    minimize_field_1d(f, grid, &argmin, &inf_value, /*polish=*/true);
    const double dl = epi_distance_cloud(f, limit, grid, opts.rho, norm);
    t.add_row({theta, argmin, inf_value, dl});
    trend.x.push_back(theta);
    trend.y.push_back(dl);
  }
  emit(opts, "penalty", t, {trend}, "penalty epigraph convergence");
}

void run_cubic(DemoOptions& opts) {
  auto nus = cfg_doubles(opts, "nus", opts.real_schedule);
  if (nus.empty()) nus = {10.0, 100.0, 1000.0};
  const GridSpec grid = resolve_grid(opts, GridSpec::uniform(-2.5, 2.5, 500));
  const NormSpec norm = resolve_norm(opts);
  const ScalarField exact = cubic_exact_field();
  const ScalarField g = cubic_constraint_field();

  ReportTable t = make_table(opts, "cubic", &grid);
  t.add_meta("nus", join_numbers(nus));
  t.add_meta("exact_argmin", 1.0);
  t.columns = {"nu", "argmin_grid", "argmin_refined", "inf", "dl"};
  SvgSeries trend{"dl(epi naive, epi exact)", {}, {}};
  for (double nu : nus) {
    const ScalarField naive = cubic_naive_field(nu);
    double argmin_grid = 0, inf_grid = 0;
    minimize_field_1d(naive, grid, &argmin_grid, &inf_grid, /*polish=*/false);
    // The naive minimizer sits on the boundary root of g(x) = -1/nu left of -1.
    double lo = -2.0, hi = -1.0;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (g(mid).value() + 1.0 / nu < 0 ? lo : hi) = mid;
    }
    const double refined = 0.5 * (lo + hi);
    const double dl = epi_distance_cloud(naive, exact, grid, opts.rho, norm);
    t.add_row({nu, argmin_grid, refined, -refined, dl});
    trend.x.push_back(nu);
    trend.y.push_back(dl);
  }
  emit(opts, "cubic", t, {trend}, "naive constraint substitution");
}

void run_soften(DemoOptions& opts) {
  auto nus = cfg_doubles(opts, "nus", opts.real_schedule);
  if (nus.empty()) nus = {100.0, 1000.0, 10000.0};
  const NormSpec norm = resolve_norm(opts);

  ReportTable t = make_table(opts, "soften");
  t.add_meta("nus", join_numbers(nus));
  t.columns = {"nu", "theta", "alpha", "dl"};
  SvgSeries trend{"dl(epi softened, epi exact)", {}, {}};
  for (double nu : nus) {
    const SoftenedCubic sc = make_softened_cubic(nu);
    // Alpha levels at the x spacing, not the coarse y spacing: the theta*alpha
    // offset of the isolated columns must survive level rounding.
    const double alpha_h = sc.approx_grid.spacing(0);
    const EpiCloud approx = sample_epigraph(sc.approx, sc.approx_grid, opts.rho, norm, alpha_h);
    const EpiCloud exact = sample_epigraph(sc.exact, sc.exact_grid, opts.rho, norm, alpha_h);
    const double dl = epi_distance_cloud(approx, exact, norm);
    t.add_row({nu, sc.theta, sc.alpha, dl});
    trend.x.push_back(nu);
    trend.y.push_back(dl);
  }
  emit(opts, "soften", t, {trend}, "constraint softening");
}

void run_cp(DemoOptions& opts) {
  auto thetas = cfg_doubles(opts, "thetas", opts.real_schedule);
  if (thetas.empty()) thetas = {10.0, 100.0, 1000.0, 10000.0};
  VectorField field = canonical_lcp();
  if (opts.config.is_object() && opts.config.contains("M"))
    field = make_affine_field(opts.config.at("M").get<std::vector<std::vector<double>>>(),
                              opts.config.at("q").get<std::vector<double>>());
  std::vector<double> z0(static_cast<size_t>(field.in_dim), 0.0);
  const std::string z0_arg = cfg_string(opts, "z0", opts.start);
  if (!z0_arg.empty()) z0 = parse_vector_arg(z0_arg, "z0");

  SmoothingSchedule schedule{thetas};
  const CpSolveResult result = solve_cp_smoothed(field, schedule, z0);

  std::vector<double> prj(result.z.size());
  for (size_t i = 0; i < result.z.size(); ++i) prj[i] = std::max(0.0, result.z[i]);

  ReportTable t = make_table(opts, "cp");
  t.add_meta("thetas", join_numbers(thetas));
  t.add_meta("z0", join_numbers(z0));
  t.add_meta("z", join_numbers(result.z));
  t.add_meta("prj_z", join_numbers(prj));
  t.add_meta("exact_residual", result.exact_residual);
  t.columns = {"stage", "theta", "iterations", "residual"};
  SvgSeries trend{"stage residual", {}, {}};
  for (size_t i = 0; i < result.trace.size(); ++i) {
    t.add_row({static_cast<double>(i), result.trace[i].parameter,
               static_cast<double>(result.trace[i].iterations), result.trace[i].residual});
    trend.x.push_back(static_cast<double>(i));
    trend.y.push_back(result.trace[i].residual);
  }
  emit(opts, "cp", t, {trend}, "smoothed complementarity solve");
}

void run_homotopy(DemoOptions& opts) {
  auto lambdas = cfg_doubles(opts, "lambdas", opts.lambda_schedule);
  if (lambdas.empty()) lambdas = {1.0, 0.5, 0.2, 0.05, 0.0};
  SetValuedMap map = make_sin_homotopy_map();
  const std::string map_text = cfg_string(opts, "map", "");
  if (!map_text.empty()) map = parse_mapping_json(map_text);
  std::vector<double> y_bar(static_cast<size_t>(map.out_dim), 0.0);
  const std::string y_arg = cfg_string(opts, "ybar", opts.start);
  if (!y_arg.empty()) y_bar = parse_vector_arg(y_arg, "ybar");

  HomotopySchedule schedule;
  schedule.lambdas = lambdas;
  const HomotopySolveResult result = homotopy_solve(map, y_bar, schedule);

  ReportTable t = make_table(opts, "homotopy");
  t.add_meta("lambdas", join_numbers(lambdas));
  t.add_meta("ybar", join_numbers(y_bar));
  t.add_meta("x_star", join_numbers(result.x));
  t.add_meta("final_residual", result.final_residual);
  t.columns = {"stage", "lambda", "iterations", "residual"};
  SvgSeries trend{"stage residual", {}, {}};
  for (size_t i = 0; i < result.trace.size(); ++i) {
    t.add_row({static_cast<double>(i), result.trace[i].parameter,
               static_cast<double>(result.trace[i].iterations), result.trace[i].residual});
    trend.x.push_back(static_cast<double>(i));
    trend.y.push_back(result.trace[i].residual);
  }
  emit(opts, "homotopy", t, {trend}, "homotopy continuation");
}

void run_cones(DemoOptions& opts) {
  ConvexPolyhedron c;
  if (opts.config.is_object() && opts.config.contains("polyhedron")) {
    c = parse_polyhedron_json(opts.config.at("polyhedron").dump());
  } else {
    c.dim = 2;
    c.a = {{-1.0, 0.0}, {0.0, -1.0}};
    c.b = {0.0, 0.0};
  }
  const auto x = parse_vector_arg(cfg_string(opts, "point", opts.point), "point");
  const auto grad = parse_vector_arg(cfg_string(opts, "grad", opts.gradient), "grad");
  if (static_cast<int>(x.size()) != c.dim || grad.size() != x.size())
    throw ValidationError("cones: point/grad dimension does not match the polyhedron");

  Cone tangent = tangent_cone_polyhedral(c, x);
  tangent.complete_representations();
  Cone normal = polar_cone(tangent);
  normal.complete_representations();
  const double residual = optimality_residual(
      [&grad](std::span<const double>) { return grad; }, c, x);

  ReportTable t = make_table(opts, "cones");
  t.add_meta("point", join_numbers(x));
  t.add_meta("grad", join_numbers(grad));
  t.add_meta("optimality_residual", residual);
  t.columns = {"set"};  // 0 = tangent generator, 1 = normal generator
  for (int k = 0; k < c.dim; ++k) t.columns.push_back("g" + std::to_string(k));
  for (const auto& gen : tangent.generators) {
    std::vector<double> row{0.0};
    row.insert(row.end(), gen.begin(), gen.end());
    t.add_row(row);
  }
  for (const auto& gen : normal.generators) {
    std::vector<double> row{1.0};
    row.insert(row.end(), gen.begin(), gen.end());
    t.add_row(row);
  }
  emit(opts, "cones", t);
}

}  // namespace setconv::demos
