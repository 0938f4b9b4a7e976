#pragma once

// JSON construction of core objects plus the named demo instances reachable
// from configuration files. All parsers take JSON text and throw
// ValidationError naming the offending field.

#include <string>

#include "setconv/geneq.hpp"
#include "setconv/grid.hpp"
#include "setconv/norm.hpp"
#include "setconv/point_cloud.hpp"
#include "setconv/scalar_field.hpp"
#include "setconv/vargeo.hpp"

namespace setconv {

// {"kind": "euclidean" | "max" | "product", "blocks": [[d, spec], ...]}
// (product combines its blocks with max)
NormSpec parse_norm_json(const std::string& text);

// {"dim": n, "points": [[x1, ..., xn], ...]}
PointCloud parse_cloud_json(const std::string& text);
std::string cloud_to_json(const PointCloud& c);

// {"A": [[...], ...], "b": [...]}
ConvexPolyhedron parse_polyhedron_json(const std::string& text);

// {"axes": [[lo, hi, steps], ...]} or {"lo": , "hi": , "steps": , "dim": }
GridSpec parse_grid_json(const std::string& text);

// Scalar-field registry. Combinator kinds: constant, affine, quadratic, abs,
// sum, min, max, scale, indicator-leq, indicator-point, restricted. Named
// built-ins: penalty, cubic-naive, cubic-exact, cdf-step, smooth-plus.
ScalarField parse_scalar_field_json(const std::string& text);

// Mapping registry kinds: identity, sharpness-s, sharpness-t, feasmap,
// sin-homotopy, normal-map (affine M, q with optional smoothing theta),
// lcp-normal-map (the canonical instance).
SetValuedMap parse_mapping_json(const std::string& text);

// {"thetas": [...]} / {"lambdas": [...], "targets": [[...], ...]}
SmoothingSchedule parse_smoothing_schedule_json(const std::string& text);
HomotopySchedule parse_homotopy_schedule_json(const std::string& text);

std::string cone_generators_to_json(const Cone& k);

std::string read_text_file(const std::string& path);

// Named instances (the JSON registry dispatches to these).

/// (x+1)^2 + theta x^2; minimizer -1/(1+theta).
ScalarField penalty_field(double theta);
/// (x+1)^2 restricted to {0}: the penalty family's epi-limit.
ScalarField penalty_limit_field();

/// g(x) = (x-1)^2 (x+1); feasible set of g <= 0 is (-inf,-1] with {1}.
ScalarField cubic_constraint_field();
/// -x + indicator(g(x) <= -1/nu): uniform error 1/nu in the constraint
/// relocates the minimizer from 1 to just below -1.
ScalarField cubic_naive_field(double nu);
/// -x + indicator(g(x) <= 0); unique minimizer 1.
ScalarField cubic_exact_field();

/// Step CDF: 0 for x < t, 1 for x >= t.
ScalarField cdf_step_field(double t);

/// smooth_plus(., theta) as a smooth field.
ScalarField smooth_plus_field(double theta);

/// Constraint-softened reformulation of the cubic problem on (x, y):
///   approx(x,y) = -x + theta y + indicator(y >= 0) + indicator(g(x) + alpha <= y)
///   exact(x,y)  = -x + indicator(y = 0) + indicator(g(x) <= y)
/// with theta = sqrt(nu), alpha = 1/nu. The sampling grids anchor the y axis
/// at alpha (approx) and 0 (exact) so the two epigraph clouds realize the
/// theta * alpha offset; this anchoring is what the demo measures.
struct SoftenedCubic {
  ScalarField approx;
  ScalarField exact;
  GridSpec approx_grid;
  GridSpec exact_grid;
  double theta = 0;
  double alpha = 0;
};
SoftenedCubic make_softened_cubic(double nu, double x_lo = -2.5, double x_hi = 2.5,
                                  int x_steps = 500, double y_span = 2.0, int y_steps = 4);

}  // namespace setconv
