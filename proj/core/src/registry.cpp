#include "setconv/registry.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "setconv/errors.hpp"

namespace setconv {
namespace {

using nlohmann::json;

json parse_text(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string(what) + ": invalid JSON: " + e.what());
  }
}

const json& field(const json& j, const char* key, const char* ctx) {
  if (!j.is_object() || !j.contains(key))
    throw ValidationError(std::string(ctx) + ": missing field '" + key + "'");
  return j.at(key);
}

double num(const json& j, const char* key, const char* ctx) {
  const json& v = field(j, key, ctx);
  if (!v.is_number())
    throw ValidationError(std::string(ctx) + ": field '" + key + "' must be a number");
  return v.get<double>();
}

std::string str(const json& j, const char* key, const char* ctx) {
  const json& v = field(j, key, ctx);
  if (!v.is_string())
    throw ValidationError(std::string(ctx) + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<double> num_array(const json& v, const char* key, const char* ctx) {
  if (!v.is_array())
    throw ValidationError(std::string(ctx) + ": field '" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number())
      throw ValidationError(std::string(ctx) + ": field '" + key + "' must contain only numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

NormSpec norm_from(const json& j);

NormSpec norm_from(const json& j) {
  const std::string kind = str(j, "kind", "norm");
  if (kind == "euclidean") return NormSpec::euclidean();
  if (kind == "max") return NormSpec::max_norm();
  if (kind == "product") {
    const json& blocks = field(j, "blocks", "norm");
    if (!blocks.is_array() || blocks.empty())
      throw ValidationError("norm: field 'blocks' must be a nonempty array");
    std::vector<std::pair<int, NormSpec>> parts;
    for (const auto& b : blocks) {
      if (!b.is_array() || b.size() != 2 || !b[0].is_number_integer())
        throw ValidationError("norm: each block must be [dim, spec]");
      parts.emplace_back(b[0].get<int>(), norm_from(b[1]));
    }
    return NormSpec::product(std::move(parts));
  }
  throw ValidationError("norm: unknown kind '" + kind + "'");
}

GridSpec grid_from(const json& j) {
  if (j.contains("axes")) {
    const json& axes = field(j, "axes", "grid");
    if (!axes.is_array() || axes.empty())
      throw ValidationError("grid: field 'axes' must be a nonempty array");
    GridSpec g;
    for (const auto& a : axes) {
      if (!a.is_array() || a.size() != 3)
        throw ValidationError("grid: each axis must be [lo, hi, steps]");
      g.axes.push_back({a[0].get<double>(), a[1].get<double>(), a[2].get<int>()});
    }
    g.validate("grid");
    return g;
  }
  const int dim = j.contains("dim") ? static_cast<int>(num(j, "dim", "grid")) : 1;
  return GridSpec::uniform(num(j, "lo", "grid"), num(j, "hi", "grid"),
                           static_cast<int>(num(j, "steps", "grid")), dim);
}

ScalarField scalar_field_from(const json& j);

std::vector<ScalarField> term_list(const json& j, const char* ctx) {
  const json& terms = field(j, "terms", ctx);
  if (!terms.is_array() || terms.empty())
    throw ValidationError(std::string(ctx) + ": field 'terms' must be a nonempty array");
  std::vector<ScalarField> out;
  for (const auto& t : terms) out.push_back(scalar_field_from(t));
  return out;
}

ScalarField scalar_field_from(const json& j) {
  const std::string kind = str(j, "kind", "scalar field");
  if (kind == "constant") {
    const int dim = j.contains("dim") ? static_cast<int>(num(j, "dim", "constant")) : 1;
    return make_constant(num(j, "value", "constant"), dim);
  }
  if (kind == "affine")
    return make_affine(num_array(field(j, "coeffs", "affine"), "coeffs", "affine"),
                       num(j, "offset", "affine"));
  if (kind == "quadratic")
    return make_quadratic_1d(num(j, "a", "quadratic"), num(j, "b", "quadratic"),
                             num(j, "c", "quadratic"));
  if (kind == "abs") return make_abs(j.contains("scale") ? num(j, "scale", "abs") : 1.0);
  if (kind == "sum") return make_sum(term_list(j, "sum"));
  if (kind == "min") return make_min(term_list(j, "min"));
  if (kind == "max") return make_max(term_list(j, "max"));
  if (kind == "scale")
    return make_scale(scalar_field_from(field(j, "term", "scale")), num(j, "factor", "scale"));
  if (kind == "indicator-leq")
    return make_indicator_leq(scalar_field_from(field(j, "term", "indicator-leq")),
                              j.contains("level") ? num(j, "level", "indicator-leq") : 0.0);
  if (kind == "indicator-point")
    return make_indicator_point(
        num_array(field(j, "center", "indicator-point"), "center", "indicator-point"));
  if (kind == "restricted")
    return make_restricted(scalar_field_from(field(j, "objective", "restricted")),
                           scalar_field_from(field(j, "constraint", "restricted")),
                           j.contains("level") ? num(j, "level", "restricted") : 0.0);
  if (kind == "penalty") {
    if (j.contains("limit") && j.at("limit").is_boolean() && j.at("limit").get<bool>())
      return penalty_limit_field();
    return penalty_field(num(j, "theta", "penalty"));
  }
  if (kind == "cubic-naive") return cubic_naive_field(num(j, "nu", "cubic-naive"));
  if (kind == "cubic-exact") return cubic_exact_field();
  if (kind == "cdf-step") {
    if (j.contains("limit") && j.at("limit").is_boolean() && j.at("limit").get<bool>())
      return cdf_step_field(0.0);
    if (j.contains("t")) return cdf_step_field(num(j, "t", "cdf-step"));
    return cdf_step_field(1.0 / num(j, "nu", "cdf-step"));
  }
  if (kind == "smooth-plus") return smooth_plus_field(num(j, "theta", "smooth-plus"));
  throw ValidationError("scalar field: unknown kind '" + kind + "'");
}

}  // namespace

NormSpec parse_norm_json(const std::string& text) {
  return norm_from(parse_text(text, "norm"));
}

PointCloud parse_cloud_json(const std::string& text) {
  const json j = parse_text(text, "point cloud");
  const int dim = static_cast<int>(num(j, "dim", "point cloud"));
  if (dim <= 0) throw ValidationError("point cloud: field 'dim' must be positive");
  const json& pts = field(j, "points", "point cloud");
  if (!pts.is_array()) throw ValidationError("point cloud: field 'points' must be an array");
  PointCloud c(dim);
  for (const auto& p : pts) {
    const std::vector<double> row = num_array(p, "points", "point cloud");
    if (static_cast<int>(row.size()) != dim)
      throw ValidationError("point cloud: field 'points' contains a row of wrong dimension");
    c.push_back(row);
  }
  return c;
}

std::string cloud_to_json(const PointCloud& c) {
  json j;
  j["dim"] = c.dim();
  json pts = json::array();
  for (size_t i = 0; i < c.size(); ++i) {
    json row = json::array();
    for (double v : c[i]) row.push_back(v);
    pts.push_back(std::move(row));
  }
  j["points"] = std::move(pts);
  return j.dump(2) + "\n";
}

ConvexPolyhedron parse_polyhedron_json(const std::string& text) {
  const json j = parse_text(text, "polyhedron");
  const json& a = field(j, "A", "polyhedron");
  if (!a.is_array() || a.empty())
    throw ValidationError("polyhedron: field 'A' must be a nonempty array of rows");
  ConvexPolyhedron p;
  for (const auto& row : a) p.a.push_back(num_array(row, "A", "polyhedron"));
  p.dim = static_cast<int>(p.a.front().size());
  p.b = num_array(field(j, "b", "polyhedron"), "b", "polyhedron");
  p.validate("polyhedron");
  return p;
}

GridSpec parse_grid_json(const std::string& text) {
  return grid_from(parse_text(text, "grid"));
}

ScalarField parse_scalar_field_json(const std::string& text) {
  return scalar_field_from(parse_text(text, "scalar field"));
}

SetValuedMap parse_mapping_json(const std::string& text) {
  const json j = parse_text(text, "mapping");
  const std::string kind = str(j, "kind", "mapping");
  if (kind == "identity") {
    const int dim = j.contains("dim") ? static_cast<int>(num(j, "dim", "identity")) : 1;
    return make_single_valued(
        dim, dim,
        [](std::span<const double> x) { return std::vector<double>(x.begin(), x.end()); },
        [dim](std::span<const double>) {
          std::vector<std::vector<double>> id(static_cast<size_t>(dim),
                                              std::vector<double>(static_cast<size_t>(dim), 0.0));
          for (int i = 0; i < dim; ++i) id[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1.0;
          return id;
        });
  }
  if (kind == "sharpness-s" || kind == "sharpness-t") {
    const SharpnessPair pair = make_sharpness_pair(grid_from(field(j, "values", "mapping")));
    return kind == "sharpness-s" ? pair.s : pair.t;
  }
  if (kind == "feasmap") return make_feasible_set_map(grid_from(field(j, "xgrid", "mapping")));
  if (kind == "sin-homotopy") return make_sin_homotopy_map();
  if (kind == "normal-map" || kind == "lcp-normal-map") {
    const double theta = j.contains("theta") ? num(j, "theta", "mapping") : 0.0;
    if (kind == "lcp-normal-map") return normal_map_svmap(canonical_lcp(), theta);
    std::vector<std::vector<double>> m;
    const json& rows = field(j, "M", "normal-map");
    if (!rows.is_array() || rows.empty())
      throw ValidationError("normal-map: field 'M' must be a nonempty array of rows");
    for (const auto& r : rows) m.push_back(num_array(r, "M", "normal-map"));
    return normal_map_svmap(
        make_affine_field(std::move(m), num_array(field(j, "q", "normal-map"), "q", "normal-map")),
        theta);
  }
  throw ValidationError("mapping: unknown kind '" + kind + "'");
}

SmoothingSchedule parse_smoothing_schedule_json(const std::string& text) {
  const json j = parse_text(text, "smoothing schedule");
  SmoothingSchedule s;
  s.thetas = num_array(field(j, "thetas", "smoothing schedule"), "thetas", "smoothing schedule");
  s.validate();
  return s;
}

HomotopySchedule parse_homotopy_schedule_json(const std::string& text) {
  const json j = parse_text(text, "homotopy schedule");
  HomotopySchedule s;
  s.lambdas =
      num_array(field(j, "lambdas", "homotopy schedule"), "lambdas", "homotopy schedule");
  if (j.contains("targets")) {
    const json& t = j.at("targets");
    if (!t.is_array())
      throw ValidationError("homotopy schedule: field 'targets' must be an array");
    for (const auto& row : t)
      s.targets.push_back(num_array(row, "targets", "homotopy schedule"));
  }
  s.validate();
  return s;
}

std::string cone_generators_to_json(const Cone& k) {
  if (!k.has_gens)
    throw ValidationError("cone_generators_to_json: cone has no generator representation");
  json j;
  j["dim"] = k.dim;
  json gens = json::array();
  for (const auto& g : k.generators) {
    json row = json::array();
    for (double v : g) row.push_back(v);
    gens.push_back(std::move(row));
  }
  j["generators"] = std::move(gens);
  return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ScalarField penalty_field(double theta) {
  if (theta < 0) throw ValidationError("penalty_field: theta must be nonnegative");
  ScalarField f = make_quadratic_1d(1.0 + theta, 2.0, 1.0);
  f.label = "penalty";
  return f;
}

ScalarField penalty_limit_field() {
  ScalarField f = make_sum({make_quadratic_1d(1.0, 2.0, 1.0), make_indicator_point({0.0})});
  f.label = "penalty-limit";
  return f;
}

ScalarField cubic_constraint_field() {
  ScalarField g;
  g.dim = 1;
  g.label = "cubic-constraint";
  g.eval = [](std::span<const double> x) {
    const double t = x[0];
    return ExtReal((t - 1.0) * (t - 1.0) * (t + 1.0));
  };
  g.grad = [](std::span<const double> x) {
    const double t = x[0];
    return std::vector<double>{3.0 * t * t - 2.0 * t - 1.0};
  };
  return g;
}

ScalarField cubic_naive_field(double nu) {
  if (nu <= 0) throw ValidationError("cubic_naive_field: nu must be positive");
  ScalarField f =
      make_restricted(make_affine({-1.0}, 0.0), cubic_constraint_field(), -1.0 / nu);
  f.label = "cubic-naive";
  return f;
}

ScalarField cubic_exact_field() {
  ScalarField f = make_restricted(make_affine({-1.0}, 0.0), cubic_constraint_field(), 0.0);
  f.label = "cubic-exact";
  return f;
}

ScalarField cdf_step_field(double t) {
  ScalarField f;
  f.dim = 1;
  f.label = "cdf-step";
  f.eval = [t](std::span<const double> x) { return ExtReal(x[0] < t ? 0.0 : 1.0); };
  return f;
}

ScalarField smooth_plus_field(double theta) {
  if (theta <= 0) throw ValidationError("smooth_plus_field: theta must be positive");
  ScalarField f;
  f.dim = 1;
  f.label = "smooth-plus";
  f.eval = [theta](std::span<const double> x) { return ExtReal(smooth_plus(x[0], theta)); };
  f.grad = [theta](std::span<const double> x) {
    return std::vector<double>{smooth_plus_derivative(x[0], theta)};
  };
  return f;
}

SoftenedCubic make_softened_cubic(double nu, double x_lo, double x_hi, int x_steps,
                                  double y_span, int y_steps) {
  if (nu <= 0) throw ValidationError("make_softened_cubic: nu must be positive");
  SoftenedCubic out;
  out.theta = std::sqrt(nu);
  out.alpha = 1.0 / nu;
  const ScalarField g = cubic_constraint_field();
  const double theta = out.theta;
  const double alpha = out.alpha;

  out.approx.dim = 2;
  out.approx.label = "softened-cubic";
  out.approx.eval = [g, theta, alpha](std::span<const double> p) {
    const double x = p[0], y = p[1];
    if (y < -1e-12) return ExtReal::infinity();
    const ExtReal gv = g(std::span<const double>(&x, 1));
    if (!(gv.value() + alpha <= y + 1e-12)) return ExtReal::infinity();
    return ExtReal(-x + theta * y);
  };

  out.exact.dim = 2;
  out.exact.label = "softened-cubic-limit";
  out.exact.eval = [g](std::span<const double> p) {
    const double x = p[0], y = p[1];
    if (std::fabs(y) > 1e-12) return ExtReal::infinity();
    const ExtReal gv = g(std::span<const double>(&x, 1));
    if (!(gv.value() <= y + 1e-12)) return ExtReal::infinity();
    return ExtReal(-x);
  };

  out.approx_grid.axes = {{x_lo, x_hi, x_steps}, {alpha, alpha + y_span, y_steps}};
  out.exact_grid.axes = {{x_lo, x_hi, x_steps}, {0.0, y_span, y_steps}};
  return out;
}

}  // namespace setconv
