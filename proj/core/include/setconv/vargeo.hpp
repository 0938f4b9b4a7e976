#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "setconv/ext_real.hpp"
#include "setconv/norm.hpp"
#include "setconv/point_cloud.hpp"
#include "setconv/scalar_field.hpp"

namespace setconv {

/// Polyhedron {x | A x <= b}. Row tolerances scale as 1e-9 (1 + |b_i| + ||a_i||).
struct ConvexPolyhedron {
  int dim = 0;
  std::vector<std::vector<double>> a;  // rows
  std::vector<double> b;

  void validate(const char* where) const;
  double row_tol(size_t i) const;
  bool contains(std::span<const double> x) const;
  std::vector<int> active_rows(std::span<const double> x) const;
};

/// Polyhedral cone in H-rep {w | g_i . w <= 0} and/or generator rep
/// cone{v_j}. Representation conversion enumerates candidate rays and is
/// supported for dim <= 3.
struct Cone {
  int dim = 0;
  std::vector<std::vector<double>> halfspaces;
  std::vector<std::vector<double>> generators;
  bool has_hrep = false;
  bool has_gens = false;

  static Cone from_hrep(int dim, std::vector<std::vector<double>> rows);
  static Cone from_generators(int dim, std::vector<std::vector<double>> gens);

  bool contains(std::span<const double> w, double tol) const;
  /// Fills the missing representation (dim <= 3).
  void complete_representations();
};

/// Euclidean distance from v to cone{generators}; active-set enumeration
/// over supports of size <= dim (exact for independent supports), with a
/// projected-gradient fallback for large generator lists.
double nnls_cone_distance(const std::vector<std::vector<double>>& generators,
                          std::span<const double> v);

/// Tangent cone of a polyhedron from its active constraints. Throws if x is
/// outside the polyhedron (beyond row tolerances).
Cone tangent_cone_polyhedral(const ConvexPolyhedron& c, std::span<const double> x);

/// Sampled tangent cone: outer limit estimate of the magnified translates
/// mag_k (C - x) evaluated on unit-sphere direction probes. Requires
/// dist(x, C) <= tol.
PointCloud tangent_cone_sampled(const PointCloud& c, std::span<const double> x,
                                const std::vector<double>& magnifications,
                                const PointCloud& probes, double tol,
                                const NormSpec& norm = NormSpec::euclidean());

/// Polar of a cone: swaps H-rep rows and generators.
Cone regular_normal_cone(const Cone& tangent);
Cone polar_cone(const Cone& k);

struct LimitingNormalParams {
  std::vector<double> approach_radii;   // decreasing stage radii around x
  std::vector<double> magnifications;   // per-point tangent magnification schedule
  double tangent_tol = 0.05;
  double polar_tol = 0.05;
  double outer_tol = 0.05;
  int max_points_per_stage = 12;
};

/// Sampled limiting normal cone: regular normal directions estimated at
/// cloud points approaching x (via local tangent magnification and probe
/// polarity), combined by an outer limit estimate over the stages. Returns
/// retained unit direction probes (empty = trivial cone {0}).
PointCloud limiting_normal_cone_sampled(const PointCloud& c, std::span<const double> x,
                                        const LimitingNormalParams& params,
                                        const PointCloud& probes,
                                        const NormSpec& norm = NormSpec::euclidean());

/// Unit direction probes: full circle at the given angular spacing (2-D) or
/// a latitude/longitude net with comparable angular resolution (3-D).
PointCloud direction_probes(int dim, double angular_step_deg = 1.0);

/// Piecewise smooth function of one variable. Pieces are formula fields
/// valid in a neighborhood of their closed interval; breakpoints ascend.
/// Values at breakpoints take the min over the sides whose closed flag is
/// set (both by default), keeping the function lsc.
struct PiecewiseSmooth1D {
  std::vector<double> breakpoints;
  std::vector<ScalarField> pieces;  // size = breakpoints.size() + 1
  std::vector<bool> left_closed;    // per breakpoint
  std::vector<bool> right_closed;

  static PiecewiseSmooth1D single(ScalarField f);
  static PiecewiseSmooth1D from_pieces(std::vector<double> breakpoints,
                                       std::vector<ScalarField> pieces);

  void validate(const char* where) const;
  ExtReal eval(double x) const;
  int piece_index(double x) const;  // interval index ignoring breakpoint ties
  bool at_breakpoint(double x, int* index) const;
  /// One-sided slope at x from the piece on that side (side < 0 left).
  double slope(double x, int side) const;
};

/// Subgradient set of a piecewise smooth 1-D function at a point:
/// a singleton at smooth points, an interval [s-, s+] at convex kinks
/// (with infinite ends at domain boundaries), or the two-slope set
/// {s+, s-} at concave kinks.
struct Subdifferential1D {
  enum class Kind { Singleton, Interval, SlopePair };
  Kind kind = Kind::Singleton;
  double slope = 0.0;                  // Singleton
  ExtReal lo = 0.0, hi = 0.0;          // Interval
  std::array<double, 2> slopes{};      // SlopePair, ascending

  double dist_to_zero() const;
  bool contains(double s, double tol) const;
  /// Epigraph normal directions (v, -1) for the descriptor's extreme slopes.
  std::vector<std::array<double, 2>> normal_directions() const;
};

Subdifferential1D subdifferential_1d(const PiecewiseSmooth1D& f, double x);

/// dist(0, subgradient set) at x = the stationarity residual.
double fermat_residual_1d(const PiecewiseSmooth1D& f, double x);

/// dist_2(-grad f(x), N_C(x)) for a polyhedron C; zero at KKT points.
double optimality_residual(const std::function<std::vector<double>(std::span<const double>)>& grad_f,
                           const ConvexPolyhedron& c, std::span<const double> x);

}  // namespace setconv
