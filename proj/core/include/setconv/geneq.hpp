#pragma once

// Set-valued mappings, sampled graph distances, graphical-convergence
// diagnostics, and the smoothing / homotopy solver demos built on them.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "setconv/grid.hpp"
#include "setconv/norm.hpp"
#include "setconv/point_cloud.hpp"
#include "setconv/scalar_field.hpp"
#include "setconv/vargeo.hpp"

namespace setconv {

/// Point-to-set assignment x -> S(x), sampled.  eval returns an empty cloud
/// exactly when x is outside the domain.  graph_sampler, when present,
/// overrides the default graph sampling loop (used by mappings whose value
/// sets need their own discretization, e.g. intervals).
struct SetValuedMap {
  int in_dim = 1;
  int out_dim = 1;
  std::function<PointCloud(std::span<const double>)> eval;
  std::function<PointCloud(const GridSpec&, const GridSpec&)> graph_sampler;
  bool single_valued = false;
  // Jacobian of the (single-valued) map, rows = out_dim. Optional.
  std::function<std::vector<std::vector<double>>(std::span<const double>)> jacobian;

  bool has_jacobian() const { return static_cast<bool>(jacobian); }
};

SetValuedMap make_single_valued(
    int in_dim, int out_dim,
    std::function<std::vector<double>(std::span<const double>)> value,
    std::function<std::vector<std::vector<double>>(std::span<const double>)> jacobian = nullptr);

/// Single value of a single-valued mapping. Throws if the map is not flagged
/// single_valued or the value set is not a single point.
std::vector<double> single_value(const SetValuedMap& s, std::span<const double> x);

/// Product norm max{|x|_2-block, |y|_2-block} used for graph spaces.
NormSpec graph_norm(int in_dim, int out_dim);

/// Samples gph S = {(x,y) | y in S(x)} over the grids. Default path walks
/// in_grid and concatenates value clouds; out_grid is consumed only by maps
/// that carry their own graph_sampler.
PointCloud sample_graph(const SetValuedMap& s, const GridSpec& in_grid, const GridSpec& out_grid);

/// Truncated Hausdorff distance between the sampled graphs under the product
/// norm (graph_norm by default when norm.dimension() mismatches is an error).
double graph_distance(const SetValuedMap& s, const SetValuedMap& t, double rho,
                      const GridSpec& in_grid, const GridSpec& out_grid, const NormSpec& norm);
double graph_distance(const SetValuedMap& s, const SetValuedMap& t, double rho,
                      const GridSpec& in_grid, const GridSpec& out_grid);

/// Grid points x with dist(ball.center, S(x)) <= ball.radius.
PointCloud preimage(const SetValuedMap& s, const Ball& y_ball, const GridSpec& domain_grid);

struct NearSolutionReport {
  double rho = 0, epsilon = 0, delta = 0;
  double dl = 0;      // sampled dl_rho(gph S, gph T)
  double excess = 0;  // exs(S^{-1}(B(y,eps)) cap B(0,rho); T^{-1}(B(y,delta)))
  double margin = 0;  // dl - excess
  bool holds = false;
  bool preconditions_ok = false;
  bool delta_strict = false;  // delta > eps + dl with strict inequality
  bool s_preimage_empty = false;
  bool t_preimage_empty = false;
};

/// Checks the near-solution error bound: every eps-solution of S within the
/// truncation ball is within the sampled graph distance of some
/// delta-solution of T, provided delta > eps + dl.
NearSolutionReport near_solution_check(const SetValuedMap& s, const SetValuedMap& t,
                                       std::vector<double> y_bar, double epsilon, double delta,
                                       double rho, const GridSpec& in_grid,
                                       const GridSpec& out_grid);

struct OscReport {
  bool osc = false;
  double tol = 0;
  std::vector<int> factors;
  std::vector<double> violations;  // per factor: exs(fine graph cap B(0,rho); coarse graph)
  double max_violation = 0;
};

/// Closedness surrogate for outer semicontinuity: refining the sampling grids
/// must not create graph points farther than tol from the coarse graph inside
/// the truncation window.  tol <= 0 picks 2*(in spacing + out spacing).
OscReport osc_diagnostic(const SetValuedMap& s, double rho, const GridSpec& in_grid,
                         const GridSpec& out_grid, double tol = -1.0,
                         std::vector<int> factors = {2, 4});

/// Smooth approximation of max{0, alpha}: log(1 + exp(alpha * theta)) / theta,
/// evaluated in overflow-free form. Monotone in alpha and >= max{0, alpha};
/// the gap is at most ln(2)/theta. Throws on theta <= 0.
double smooth_plus(double alpha, double theta);
/// Derivative in alpha: the logistic sigmoid of alpha * theta.
double smooth_plus_derivative(double alpha, double theta);

/// Residual of the normal-map reformulation of a complementarity problem:
/// F(p) + z - p with p = componentwise max{0, z}. Zero exactly at solutions.
std::vector<double> normal_map_residual(const VectorField& f, std::span<const double> z);

/// Normal-map mapping z -> {F(prj z) + z - prj z}; theta > 0 replaces the
/// projection by componentwise smooth_plus.
SetValuedMap normal_map_svmap(const VectorField& f, double theta = 0.0);

struct NewtonParams {
  double tol = 1e-10;
  int max_iter = 50;
  int max_halvings = 20;
};

struct SmoothingSchedule {
  std::vector<double> thetas;  // strictly increasing, positive
  void validate() const;
};

struct HomotopySchedule {
  std::vector<double> lambdas;            // in (0,1] strictly decreasing; terminal 0 allowed
  std::vector<std::vector<double>> targets;  // optional per-stage y_bar overrides
  void validate() const;
};

struct StageRecord {
  double parameter = 0;  // theta or lambda
  int iterations = 0;
  double residual = 0;  // stage-equation residual at acceptance
};

struct CpSolveResult {
  std::vector<double> z;
  std::vector<StageRecord> trace;
  double exact_residual = 0;  // normal_map_residual at the final iterate
};

/// Warm-started Newton stages on the smoothed normal map
/// F(Phi(z)) + z - Phi(z) with Phi = componentwise smooth_plus at each theta.
/// Throws SolverDivergence with the failing stage index and last iterate.
CpSolveResult solve_cp_smoothed(const VectorField& f, const SmoothingSchedule& schedule,
                                std::vector<double> z0, const NewtonParams& params = {});

/// Sampled graph distance between the theta-smoothed and exact normal-map
/// mappings for each scheduled theta; the decreasing trend certifies that the
/// smoothed solutions approach solutions of the original problem.
std::vector<double> cp_graph_distance_trend(const VectorField& f,
                                            const SmoothingSchedule& schedule, double rho,
                                            const GridSpec& in_grid, const GridSpec& out_grid);

struct HomotopySolveResult {
  std::vector<double> x;
  std::vector<StageRecord> trace;
  double final_residual = 0;  // |S(x) - y_bar| at the last stage target
};

/// Continuation on (1-lambda) S(x) + lambda x = y_bar. At lambda = 1 the
/// stage solution is x = y_bar exactly; later stages warm-start from the
/// previous one. Requires a single-valued map with jacobian.
HomotopySolveResult homotopy_solve(const SetValuedMap& s, std::vector<double> y_bar,
                                   const HomotopySchedule& schedule,
                                   const NewtonParams& params = {});

/// Convex combination stage mapping (1-lambda) S + lambda I as a SetValuedMap
/// (used to measure the graph-distance trend of the homotopy family).
SetValuedMap homotopy_stage_map(const SetValuedMap& s, double lambda);

/// Samples the maximal monotone graph of the subdifferential of a convex
/// piecewise-smooth 1-D function: (x, f'(x)) at smooth grid points, vertical
/// segments sampled at out-grid spacing at the kinks.
PointCloud subgradient_graph_1d(const PiecewiseSmooth1D& f, const GridSpec& in_grid,
                                const GridSpec& out_grid);

struct CompositeStationarityBound {
  double bound = 0;
  double sup_value_gap = 0;   // sup |F - G|_2 over the sampled rho-ball
  double sup_jacobian_gap = 0;  // sup |JF - JG|_Frobenius over the same ball
  double dl_subgradient = 0;  // dl_{2 rho}(gph d(phi), gph d(psi))
  double sampled_dl = 0;      // coarse direct graph distance of the assembled mappings
  bool cross_checked = false;
  bool dominates = false;  // sampled_dl <= bound + slack
  double slack = 0;
};

/// Bound on the graph distance between the stationarity systems
/// S(x,y,z) = {F(x)-z} x {d(phi)(z)-y} x {JF(x)^T y} of two composites
/// phi(F(x)), psi(G(x)) with scalar inner maps (out_dim 1):
///   sup_{|x|_2 <= rho} max{ |G-F|_2 + dl_{2rho}(gph d(phi), gph d(psi)),
///                           rho |JG-JF|_F }.
/// The cross-check resamples both systems on capped grids and verifies the
/// bound dominates the measured distance.
CompositeStationarityBound composite_stationarity_bound(
    const PiecewiseSmooth1D& phi, const PiecewiseSmooth1D& psi, const VectorField& f,
    const VectorField& g, double rho, const GridSpec& x_grid, const GridSpec& z_grid,
    const GridSpec& slope_grid, bool cross_check = true);

// Canonical demo instances.

/// S(x) = [x, infinity) for x in [0,1], empty otherwise; values sampled on
/// value_grid. Companion T(x) = (1, infinity) for x in [1,2], sampled closed
/// from the first value-grid point above 1.
struct SharpnessPair {
  SetValuedMap s;
  SetValuedMap t;
};
SharpnessPair make_sharpness_pair(const GridSpec& value_grid);

/// Feasible-set mapping u -> {x in [-10,10] | u * x <= 1} with x sampled on
/// x_grid.
SetValuedMap make_feasible_set_map(const GridSpec& x_grid);

/// S(x) = {x + sin x + 1}, single-valued with derivative 1 + cos x.
SetValuedMap make_sin_homotopy_map();

/// Affine field x -> M x + q with constant jacobian M.
VectorField make_affine_field(std::vector<std::vector<double>> m, std::vector<double> q);

/// The canonical 2-D linear complementarity instance
/// M = [[2,1],[1,2]], q = (-1,-1), solution x = (1/3, 1/3).
VectorField canonical_lcp();

}  // namespace setconv
