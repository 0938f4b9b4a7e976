#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "setconv/errors.hpp"
#include "setconv/geneq.hpp"
#include "setconv/io.hpp"
#include "setconv/registry.hpp"
#include "setconv/vargeo.hpp"

using namespace setconv;

TEST_CASE("norm parsing") {
  auto e = parse_norm_json(R"({"kind": "euclidean"})");
  std::vector<double> a{0.0, 0.0}, b{3.0, 4.0};
  CHECK(e.distance(a, b) == doctest::Approx(5.0));

  auto m = parse_norm_json(R"({"kind": "max"})");
  CHECK(m.distance(a, b) == doctest::Approx(4.0));

  auto p = parse_norm_json(
      R"({"kind": "product",
          "blocks": [[2, {"kind": "euclidean"}], [1, {"kind": "max"}]]})");
  std::vector<double> u{0.0, 0.0, 0.0}, v{3.0, 4.0, 2.0};
  CHECK(p.distance(u, v) == doctest::Approx(5.0));  // max{hypot(3,4), 2}

  CHECK_THROWS_WITH_AS(parse_norm_json(R"({"kind": "taxicab"})"),
                       "norm: unknown kind 'taxicab'", ValidationError);
  CHECK_THROWS_WITH_AS(parse_norm_json(R"({})"), "norm: missing field 'kind'", ValidationError);
  CHECK_THROWS_AS(parse_norm_json(R"({"kind": "product", "blocks": []})"), ValidationError);
  CHECK_THROWS_AS(parse_norm_json("{"), ValidationError);  // invalid JSON
}

TEST_CASE("point cloud round trip") {
  auto c = parse_cloud_json(R"({"dim": 2, "points": [[0.1, -0.25], [1, 2]]})");
  REQUIRE(c.size() == 2);
  CHECK(c.dim() == 2);
  CHECK(c[0][0] == 0.1);
  CHECK(c[0][1] == -0.25);

  PointCloud orig(3);
  orig.push_back({0.1, -1.0 / 3.0, 5e-17});
  orig.push_back({1.0, 2.0, 3.0});
  auto back = parse_cloud_json(cloud_to_json(orig));
  REQUIRE(back.size() == orig.size());
  for (size_t i = 0; i < orig.size(); ++i)
    for (int k = 0; k < 3; ++k) CHECK(back[i][k] == orig[i][k]);  // bit-exact round trip

  CHECK_THROWS_WITH_AS(parse_cloud_json(R"({"dim": 0, "points": []})"),
                       "point cloud: field 'dim' must be positive", ValidationError);
  CHECK_THROWS_WITH_AS(parse_cloud_json(R"({"dim": 2, "points": [[1, 2], [3]]})"),
                       "point cloud: field 'points' contains a row of wrong dimension",
                       ValidationError);
  CHECK_THROWS_AS(parse_cloud_json(R"({"dim": 2, "points": 3})"), ValidationError);
}

TEST_CASE("polyhedron parsing") {
  auto p = parse_polyhedron_json(
      R"({"A": [[-1, 0], [0, -1], [1, 1]], "b": [0, 0, 1]})");
  CHECK(p.dim == 2);
  std::vector<double> inside{0.25, 0.25}, outside{0.8, 0.8};
  CHECK(p.contains(inside));
  CHECK(!p.contains(outside));

  CHECK_THROWS_AS(parse_polyhedron_json(R"({"A": [], "b": []})"), ValidationError);
  CHECK_THROWS_AS(parse_polyhedron_json(R"({"A": [[1, 0]], "b": [1, 2]})"), ValidationError);
}

TEST_CASE("grid parsing accepts both forms") {
  auto g1 = parse_grid_json(R"({"axes": [[-1, 1, 4], [-1, 1, 4]]})");
  auto g2 = parse_grid_json(R"({"lo": -1, "hi": 1, "steps": 4, "dim": 2})");
  REQUIRE(g1.dim() == 2);
  REQUIRE(g2.dim() == 2);
  for (int ax = 0; ax < 2; ++ax) {
    CHECK(g1.axes[ax].lo == g2.axes[ax].lo);
    CHECK(g1.axes[ax].hi == g2.axes[ax].hi);
    CHECK(g1.axes[ax].steps == g2.axes[ax].steps);
  }
  CHECK(g1.spacing(0) == doctest::Approx(0.5));

  auto g3 = parse_grid_json(R"({"lo": 0, "hi": 2, "steps": 8})");  // dim defaults to 1
  CHECK(g3.dim() == 1);

  CHECK_THROWS_WITH_AS(parse_grid_json(R"({"axes": [[0, 1]]})"),
                       "grid: each axis must be [lo, hi, steps]", ValidationError);
  CHECK_THROWS_AS(parse_grid_json(R"({"axes": []})"), ValidationError);
}

TEST_CASE("scalar field registry") {
  auto f = parse_scalar_field_json(
      R"({"kind": "sum",
          "terms": [{"kind": "quadratic", "a": 1, "b": 0, "c": 0},
                    {"kind": "abs", "scale": 2}]})");
  CHECK(f(1.5).value() == doctest::Approx(2.25 + 3.0));
  CHECK(f(-0.5).value() == doctest::Approx(0.25 + 1.0));

  auto lo = parse_scalar_field_json(
      R"({"kind": "min",
          "terms": [{"kind": "affine", "coeffs": [1], "offset": 0},
                    {"kind": "constant", "value": 0.25}]})");
  CHECK(lo(1.0).value() == doctest::Approx(0.25));
  CHECK(lo(-1.0).value() == doctest::Approx(-1.0));

  auto scaled = parse_scalar_field_json(
      R"({"kind": "scale", "factor": 3,
          "term": {"kind": "quadratic", "a": 1, "b": 0, "c": 1}})");
  CHECK(scaled(2.0).value() == doctest::Approx(15.0));

  auto restricted = parse_scalar_field_json(
      R"({"kind": "restricted",
          "objective": {"kind": "affine", "coeffs": [-1], "offset": 0},
          "constraint": {"kind": "quadratic", "a": 1, "b": 0, "c": -1}})");
  CHECK(restricted(0.5).value() == doctest::Approx(-0.5));
  CHECK(restricted(2.0).is_pos_inf());

  auto pin = parse_scalar_field_json(R"({"kind": "indicator-point", "center": [1, 2]})");
  std::vector<double> hit{1.0, 2.0}, miss{1.0, 2.5};
  CHECK(pin(hit).value() == 0.0);
  CHECK(pin(miss).is_pos_inf());

  auto pen = parse_scalar_field_json(R"({"kind": "penalty", "theta": 4})");
  CHECK(pen(-0.2).value() == doctest::Approx(0.8));  // minimizer of the theta = 4 member
  auto pen_limit = parse_scalar_field_json(R"({"kind": "penalty", "limit": true})");
  CHECK(pen_limit(0.0).value() == doctest::Approx(1.0));
  CHECK(pen_limit(0.5).is_pos_inf());

  auto step = parse_scalar_field_json(R"({"kind": "cdf-step", "t": 0.25})");
  CHECK(step(0.2).value() == 0.0);
  CHECK(step(0.25).value() == 1.0);
  auto step_nu = parse_scalar_field_json(R"({"kind": "cdf-step", "nu": 4})");
  CHECK(step_nu(0.2).value() == 0.0);
  CHECK(step_nu(0.25).value() == 1.0);
  auto step_limit = parse_scalar_field_json(R"({"kind": "cdf-step", "limit": true})");
  CHECK(step_limit(-0.1).value() == 0.0);
  CHECK(step_limit(0.0).value() == 1.0);

  auto sp = parse_scalar_field_json(R"({"kind": "smooth-plus", "theta": 10})");
  CHECK(sp(0.0).value() == doctest::Approx(std::log(2.0) / 10.0));

  CHECK_THROWS_WITH_AS(parse_scalar_field_json(R"({"kind": "bogus"})"),
                       "scalar field: unknown kind 'bogus'", ValidationError);
  CHECK_THROWS_WITH_AS(parse_scalar_field_json(R"({"kind": "affine", "offset": 1})"),
                       "affine: missing field 'coeffs'", ValidationError);
  CHECK_THROWS_AS(parse_scalar_field_json(R"({"kind": "sum", "terms": []})"), ValidationError);
  CHECK_THROWS_AS(parse_scalar_field_json(R"({"kind": "penalty", "theta": -1})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_scalar_field_json(R"({"kind": "smooth-plus", "theta": 0})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_scalar_field_json(R"({"kind": "cubic-naive", "nu": 0})"),
                  ValidationError);
}

TEST_CASE("mapping registry") {
  auto ident = parse_mapping_json(R"({"kind": "identity", "dim": 2})");
  std::vector<double> x{0.3, -0.7};
  CHECK(single_value(ident, x) == x);
  CHECK(ident.has_jacobian());

  auto s = parse_mapping_json(
      R"({"kind": "sharpness-s", "values": {"lo": -4, "hi": 4, "steps": 256}})");
  std::vector<double> half{0.5}, outside{1.5};
  CHECK(!s.eval(half).empty());
  CHECK(s.eval(outside).empty());
  auto t = parse_mapping_json(
      R"({"kind": "sharpness-t", "values": {"lo": -4, "hi": 4, "steps": 256}})");
  auto tv = t.eval(outside);
  REQUIRE(!tv.empty());
  CHECK(tv[0][0] == doctest::Approx(1.03125));  // first grid level above 1

  auto feas = parse_mapping_json(
      R"({"kind": "feasmap", "xgrid": {"lo": -10, "hi": 10, "steps": 200}})");
  std::vector<double> two{2.0};
  auto fv = feas.eval(two);
  REQUIRE(!fv.empty());
  for (size_t i = 0; i < fv.size(); ++i) CHECK(2.0 * fv[i][0] <= 1.0 + 1e-9);

  auto sinm = parse_mapping_json(R"({"kind": "sin-homotopy"})");
  std::vector<double> zero{0.0};
  CHECK(single_value(sinm, zero)[0] == doctest::Approx(1.0));

  auto lcp = parse_mapping_json(R"({"kind": "lcp-normal-map"})");
  std::vector<double> sol{1.0 / 3.0, 1.0 / 3.0};
  auto rv = single_value(lcp, sol);
  CHECK(std::fabs(rv[0]) <= 1e-12);
  CHECK(std::fabs(rv[1]) <= 1e-12);

  auto nm = parse_mapping_json(R"({"kind": "normal-map", "M": [[1]], "q": [-1]})");
  std::vector<double> one{1.0};
  CHECK(std::fabs(single_value(nm, one)[0]) <= 1e-12);

  CHECK_THROWS_WITH_AS(parse_mapping_json(R"({"kind": "bogus"})"),
                       "mapping: unknown kind 'bogus'", ValidationError);
  CHECK_THROWS_WITH_AS(parse_mapping_json(R"({"kind": "normal-map", "M": [], "q": []})"),
                       "normal-map: field 'M' must be a nonempty array of rows",
                       ValidationError);
}

TEST_CASE("schedule parsing validates") {
  auto s = parse_smoothing_schedule_json(R"({"thetas": [1, 10, 100]})");
  CHECK(s.thetas == std::vector<double>{1.0, 10.0, 100.0});
  CHECK_THROWS_AS(parse_smoothing_schedule_json(R"({"thetas": [10, 1]})"), ValidationError);

  auto h = parse_homotopy_schedule_json(
      R"({"lambdas": [1, 0.5, 0], "targets": [[0], [0], [0]]})");
  CHECK(h.lambdas.size() == 3);
  CHECK(h.targets.size() == 3);
  CHECK_THROWS_WITH_AS(parse_homotopy_schedule_json(R"({"lambdas": [1], "targets": 5})"),
                       "homotopy schedule: field 'targets' must be an array", ValidationError);
  CHECK_THROWS_AS(parse_homotopy_schedule_json(R"({"lambdas": [0.5, 0.5]})"), ValidationError);
}

TEST_CASE("cone generators serialize") {
  auto k = Cone::from_generators(2, {{1.0, 0.0}, {0.0, 1.0}});
  auto text = cone_generators_to_json(k);
  auto j = nlohmann::json::parse(text);
  CHECK(j.at("dim").get<int>() == 2);
  REQUIRE(j.at("generators").size() == 2);
  CHECK(j.at("generators")[0][0].get<double>() == 1.0);

  auto hrep_only = Cone::from_hrep(2, {{-1.0, 0.0}});
  CHECK_THROWS_AS(cone_generators_to_json(hrep_only), ValidationError);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-2.5e-9) == "-2.5e-09");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");  // %.12g
}

TEST_CASE("report tables emit deterministic CSV") {
  ReportTable t;
  t.add_meta("rho", 2.5);
  t.add_meta("mode", "demo");
  t.columns = {"nu", "dl"};
  t.add_row({1.0, 0.5});
  t.add_row({2.0, std::numeric_limits<double>::infinity()});

  const std::string expected =
      "# rho = 2.5\n"
      "# mode = demo\n"
      "nu,dl\n"
      "1,0.5\n"
      "2,inf\n";
  CHECK(t.to_csv() == expected);
  CHECK(t.to_csv() == t.to_csv());

  CHECK_THROWS_AS(t.add_row({1.0}), ValidationError);

  auto path = std::filesystem::temp_directory_path() / "setconv_report_test.csv";
  t.write_csv(path);
  CHECK(read_text_file(path.string()) == expected);
  std::filesystem::remove(path);
}

TEST_CASE("svg charts are deterministic and break at non-finite points") {
  SvgSeries a{"trend", {1, 2, 3, 4}, {0.5, 0.25, 0.125, 0.0625}};
  SvgSeries broken{"gap", {1, 2, 3, 4}, {1.0, std::nan(""), 0.5, 0.25}};
  auto svg = render_svg_lines({a, broken}, "decay");
  CHECK(svg == render_svg_lines({a, broken}, "decay"));
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("decay") != std::string::npos);
  CHECK(svg.find("trend") != std::string::npos);

  size_t polylines = 0;
  for (size_t pos = svg.find("<polyline"); pos != std::string::npos;
       pos = svg.find("<polyline", pos + 1))
    ++polylines;
  CHECK(polylines == 3);  // one for the smooth series, two around the gap

  auto empty = render_svg_lines({}, "empty");
  CHECK(empty.find("<svg") == 0);
}

TEST_CASE("text file IO") {
  CHECK_THROWS_AS(read_text_file("/nonexistent/setconv/file.txt"), ValidationError);
  auto path = std::filesystem::temp_directory_path() / "setconv_text_test.txt";
  write_text_file(path, "alpha\nbeta\n");
  CHECK(read_text_file(path.string()) == "alpha\nbeta\n");
  std::filesystem::remove(path);
}

TEST_CASE("softened cubic instance wiring") {
  auto soft = make_softened_cubic(100.0);
  CHECK(soft.theta == doctest::Approx(10.0));
  CHECK(soft.alpha == doctest::Approx(0.01));
  CHECK(soft.approx_grid.axes[1].lo == doctest::Approx(0.01));
  CHECK(soft.exact_grid.axes[1].lo == 0.0);

  std::vector<double> feasible{1.0, 0.01}, tight{1.0, 0.0};
  CHECK(soft.approx(feasible).value() == doctest::Approx(-1.0 + 10.0 * 0.01));
  CHECK(soft.approx(tight).is_pos_inf());    // y = 0 violates g + alpha <= y
  CHECK(soft.exact(tight).value() == doctest::Approx(-1.0));
  CHECK(soft.exact(feasible).is_pos_inf());  // y must vanish in the limit problem

  CHECK_THROWS_AS(make_softened_cubic(0.0), ValidationError);
}
