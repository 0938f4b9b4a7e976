#pragma once

#include <vector>

#include "setconv/grid.hpp"
#include "setconv/norm.hpp"
#include "setconv/point_cloud.hpp"
#include "setconv/scalar_field.hpp"

namespace setconv {

/// Sampled epigraph over a grid window. Columns share one ascending alpha
/// level grid spanning [-rho, rho] (last level = rho for every window
/// column), so a column is fully described by its x point and bottom level.
/// Columns outside the window (x beyond the ball, or value above rho) carry
/// no sample points; they stay in the cloud as targets because truncation
/// clips the source of an excess, never the set measured against.
struct EpiCloud {
  int x_dim = 1;
  double rho = 0.0;
  std::vector<double> alpha_levels;
  PointCloud columns;               // x points owning a column
  std::vector<double> column_lo;    // bottom alpha per column
  std::vector<char> column_window;  // 1 = sample column, 0 = excess target only

  /// True when no window column survives (no sample points).
  bool empty() const;
  size_t point_count() const;
  /// Full (x, alpha) cloud in R^{x_dim+1}; row-major by window column then
  /// level. Target-only columns contribute nothing.
  PointCloud materialize() const;
};

/// Samples epi f over the grid: window columns at grid points x with
/// ||x|| <= rho and f(x) <= rho, bottom = smallest level >= max(f(x), -rho).
/// Every other grid point with f(x) < +inf becomes a target-only column
/// holding max(f(x), -rho), so excesses measured against this epigraph see
/// it beyond the window. alpha_spacing <= 0 selects the grid's max spacing.
EpiCloud sample_epigraph(const ScalarField& f, const GridSpec& grid, double rho,
                         const NormSpec& x_norm, double alpha_spacing = -1.0);

/// Truncated Hausdorff distance between sampled epigraphs under the product
/// norm max{||x - x'||, |alpha - alpha'|}: the excess of each window sample
/// over ALL of the other cloud's columns, window and target-only alike.
/// Computed by a column reduction that equals the brute-force loop over the
/// materialized sample points bit-for-bit. Both epigraphs empty in the
/// window -> NumericalError; one empty -> +inf.
double epi_distance_cloud(const ScalarField& f, const ScalarField& g, const GridSpec& grid,
                          double rho, const NormSpec& x_norm, double alpha_spacing = -1.0);
double epi_distance_cloud(const EpiCloud& a, const EpiCloud& b, const NormSpec& x_norm);

/// Same distance through the window/offset characterization: the least eta
/// such that inf over B(xbar, eta) of g is <= max(f(xbar), -rho) + eta for
/// all grid xbar in {f <= rho} cap B(0, rho), and symmetrically. Bisection
/// on [0, 2 rho] to eta_tol (default grid max spacing / 2); returns the
/// certified feasible upper end.
double epi_distance_kenmochi(const ScalarField& f, const ScalarField& g, const GridSpec& grid,
                             double rho, const NormSpec& x_norm, double eta_tol = -1.0);

/// Hypograph distance via reflection: epi distance of -f and -g.
double hypo_distance(const ScalarField& f, const ScalarField& g, const GridSpec& grid,
                     double rho, const NormSpec& x_norm, double alpha_spacing = -1.0);

/// Bounds linking minima and near-minimizers of two functions to their
/// epigraph distance, evaluated on grid samples. Sampled-scale slack 2h is
/// applied to both bound checks; delta = epsilon + 2 dl + 3 h.
struct MinimaBoundsReport {
  double rho = 0.0;
  double epsilon = 0.0;
  double h = 0.0;
  double inf_f = 0.0;
  double inf_g = 0.0;
  std::vector<double> argmin_f;
  std::vector<double> argmin_g;
  double dl = 0.0;
  double value_gap = 0.0;
  bool value_bound_ok = false;   // |inf f - inf g| <= dl + 2h
  bool hyp_inf_f_in_range = false;   // inf f in [-rho, rho - epsilon)
  bool hyp_inf_g_in_range = false;
  bool hyp_argmin_f_in_ball = false;  // some grid argmin within B(0, rho)
  bool hyp_argmin_g_in_ball = false;
  double delta = 0.0;
  double eps_argmin_excess = 0.0;  // exs(eps-argmin g cap B(0,rho); delta-argmin f)
  bool argmin_bound_ok = false;    // excess <= dl + 2h
};
MinimaBoundsReport minima_bounds_report(const ScalarField& f, const ScalarField& g,
                                        const GridSpec& grid, double rho, double epsilon,
                                        const NormSpec& x_norm);

/// Right-hand side of the composite-objective distance estimate
/// (1 + sqrt(m) kappa(rho*) lambda(rho_hat)) dl_rho_bar(epi f0, epi g0)
///   + kappa(rho*) sup_{B2(0,rho)} ||F - G||_2
/// with radii computed from sampled sup terms, cross-checked against the
/// measured distance of the composite epigraphs.
struct CompositeEpiBoundReport {
  double rho = 0.0;
  double rho_bar = 0.0;
  double rho_hat = 0.0;
  double rho_star = 0.0;
  double dl_f0_g0 = 0.0;  // at rho_bar
  double sup_gap = 0.0;   // sup ||F-G||_2 over B2(0,rho)
  double kappa_at_rho_star = 0.0;
  double lambda_at_rho_hat = 0.0;
  double bound = 0.0;
  double dl_measured = 0.0;  // kenmochi distance of composites at rho
  double slack = 0.0;        // sampling slack used in the domination check
  bool dominates = false;
};
CompositeEpiBoundReport composite_epi_bound(const ScalarField& f0, const ScalarField& g0,
                                            const VectorField& F, const VectorField& G,
                                            const ScalarField& h, const Modulus& kappa,
                                            const Modulus& lambda, double rho,
                                            const GridSpec& grid_template);

/// Tightness diagnostic: a candidate box witnesses level eps when from some
/// scheduled nu onward its grid infimum is within eps of the surrogate
/// global infimum. The LAST listed box only supplies that surrogate (it is
/// not a candidate), so boxes.size() >= 2.
struct TightnessReport {
  std::vector<double> epsilons;
  std::vector<int> nu_schedule;
  std::vector<std::vector<double>> inf_table;  // [box][schedule idx], last box = surrogate
  std::vector<int> witness_box;                // per eps; -1 = none
  std::vector<int> nu_eps;                     // per eps; -1 = none
  bool tight = false;                          // every eps has a witness
};
TightnessReport tightness_report(const FunctionSequence& seq, const std::vector<double>& epsilons,
                                 const std::vector<GridSpec>& boxes,
                                 const std::vector<int>& nu_schedule);

/// Grid-sampled consequences of epigraph convergence: value convergence,
/// outer inclusion of vanishing-eps near-argmin sets in argmin f, inner
/// inclusion for fixed eps, and a (c, beta) search for eps^nu = c nu^-beta
/// achieving both inclusions.
struct EpiConsequencesReport {
  std::vector<int> nu_schedule;
  std::vector<double> eps_schedule;
  double fixed_eps = 0.0;
  double tol = 0.0;
  double inf_limit = 0.0;
  std::vector<double> inf_nu;
  bool value_limsup_ok = false;  // max tail inf f^nu <= inf f + tol
  double final_inf_gap = 0.0;
  bool inf_converges = false;
  double outer_violation = 0.0;  // max dist(outer-estimate point, argmin f)
  bool outer_inclusion_ok = false;
  double inner_violation = 0.0;  // max over argmin-f probes of tail sup dist to eps-argmin f^nu
  bool inner_inclusion_ok = false;
  double best_c = 0.0;
  double best_beta = 0.0;
  double best_deviation = 0.0;
};
EpiConsequencesReport epi_consequences_report(const FunctionSequence& seq, const ScalarField& f,
                                              const GridSpec& grid, double rho,
                                              const std::vector<int>& nu_schedule,
                                              const std::vector<double>& eps_schedule,
                                              double fixed_eps, const NormSpec& x_norm,
                                              double tol = -1.0);

}  // namespace setconv
