#include <cmath>
#include <random>
#include <vector>

#include "demos.hpp"
#include "setconv/distance.hpp"
#include "setconv/errors.hpp"
#include "setconv/geneq.hpp"
#include "setconv/registry.hpp"

namespace setconv::demos {

namespace {

double normal_pdf(double d) { return std::exp(-0.5 * d * d) * 0.39894228040143268; }

// One mixture-weight fit: centers on [lo, hi] with `steps` subdivisions,
// multiplicative (EM) updates of the weights. phi is column-major per center.
struct KwStage {
  int steps = 0;
  std::vector<std::vector<double>> phi;
  std::vector<double> mu;
  double objective = 0.0;
};

double mixture_objective(const std::vector<std::vector<double>>& phi,
                         const std::vector<double>& mu, std::vector<double>* mix) {
  const size_t n = phi.front().size();
  mix->assign(n, 0.0);
  for (size_t k = 0; k < mu.size(); ++k)
    for (size_t j = 0; j < n; ++j) (*mix)[j] += mu[k] * phi[k][j];
  double obj = 0.0;
  for (size_t j = 0; j < n; ++j) obj -= std::log((*mix)[j]);
  return obj / static_cast<double>(n);
}

KwStage fit_stage(const std::vector<double>& xi, const GridSpec& centers, int iters) {
  KwStage stage;
  stage.steps = centers.axes[0].steps;
  const size_t count = centers.point_count();
  const size_t n = xi.size();
  for (size_t k = 0; k < count; ++k) {
    std::vector<double> col(n);
    double z = 0.0;
    centers.point(k, std::span<double>(&z, 1));
    for (size_t j = 0; j < n; ++j) col[j] = normal_pdf(xi[j] - z);
    stage.phi.push_back(std::move(col));
  }
  stage.mu.assign(count, 1.0 / static_cast<double>(count));

  std::vector<double> mix;
  stage.objective = mixture_objective(stage.phi, stage.mu, &mix);
  if (!std::isfinite(stage.objective))
    throw NumericalError(
        "kw-density: starting objective is not finite; widen the --box center "
        "window so it covers the sample");
  for (int it = 0; it < iters; ++it) {
    double total = 0.0;
    for (size_t k = 0; k < stage.mu.size(); ++k) {
      double w = 0.0;
      for (size_t j = 0; j < n; ++j) w += stage.phi[k][j] / mix[j];
      stage.mu[k] *= w / static_cast<double>(n);
      total += stage.mu[k];
    }
    for (double& m : stage.mu) m /= total;
    const double next = mixture_objective(stage.phi, stage.mu, &mix);
    if (!std::isfinite(next))
      throw NumericalError("kw-density: objective lost finiteness during the updates");
    const double drop = stage.objective - next;
    stage.objective = next;
    if (drop < 1e-13) break;
  }
  return stage;
}

// The fitted criterion seen in "density space": p = Phi mu lists the mixture
// likelihood at the n sample points, and the objective -(1/n) sum log p_j is
// the same function of p for every center count. The reachable sets
// D = Phi(simplex) are convex hulls of the phi columns; nested centers give
// nested hulls, so epigraph distances between consecutive stages act as a
// Cauchy surrogate for epi-convergence of the fits.
PointCloud density_hull_samples(const KwStage& stage, const std::vector<double>& final_mix) {
  const size_t n = stage.phi.front().size();
  PointCloud cloud(static_cast<int>(n));
  std::vector<double> p(n);
  for (const auto& col : stage.phi) cloud.push_back(col);
  for (size_t a = 0; a < stage.phi.size(); ++a)
    for (size_t b = a + 1; b < stage.phi.size(); ++b) {
      for (size_t j = 0; j < n; ++j) p[j] = 0.5 * (stage.phi[a][j] + stage.phi[b][j]);
      cloud.push_back(p);
    }
  for (size_t j = 0; j < n; ++j) {
    p[j] = 0.0;
    for (const auto& col : stage.phi) p[j] += col[j];
    p[j] /= static_cast<double>(stage.phi.size());
  }
  cloud.push_back(p);
  cloud.push_back(final_mix);
  return cloud;
}

PointCloud density_epi_cloud(const PointCloud& hull, double rho, double level_step) {
  const int n = hull.dim();
  PointCloud epi(n + 1);
  std::vector<double> row(static_cast<size_t>(n) + 1);
  for (size_t i = 0; i < hull.size(); ++i) {
    double obj = 0.0, sq = 0.0;
    for (int j = 0; j < n; ++j) {
      obj -= std::log(hull[i][j]);
      sq += hull[i][j] * hull[i][j];
    }
    obj /= n;
    if (!(std::sqrt(sq) <= rho) || !(obj <= rho)) continue;
    for (int j = 0; j < n; ++j) row[static_cast<size_t>(j)] = hull[i][j];
    const int bottom = static_cast<int>(std::ceil(std::max(obj, 0.0) / level_step - 1e-12));
    for (int l = bottom; l * level_step <= rho; ++l) {
      row.back() = l * level_step;
      epi.push_back(row);
    }
  }
  return epi;
}

}  // namespace

void run_kw_density(DemoOptions& opts) {
  auto nus = cfg_ints(opts, "nus", opts.nu_schedule);
  if (nus.empty()) nus = {8, 16, 32};
  double box_lo = 0, box_hi = 0;
  parse_range_arg(cfg_string(opts, "box", opts.box), "box", &box_lo, &box_hi);
  const int iters = cfg_int(opts, "iters", opts.iterations);
  if (iters < 1) throw ValidationError("kw-density: iters must be positive");

  std::vector<double> xi;
  const std::string sample_path = cfg_string(opts, "sample", opts.sample_path);
  if (!sample_path.empty()) {
    const PointCloud c = parse_cloud_json(read_text_file(sample_path));
    if (c.dim() != 1) throw ValidationError("kw-density: sample cloud must be 1-D");
    for (size_t i = 0; i < c.size(); ++i) xi.push_back(c[i][0]);
  } else {
    std::mt19937 rng(opts.seed);
    std::normal_distribution<double> noise;
    for (int i = 0; i < 40; ++i) xi.push_back((i % 2 ? 1.0 : -1.0) + 0.5 * noise(rng));
  }
  if (xi.empty()) throw ValidationError("kw-density: empty sample");

  const double surrogate_rho = 4.0;
  const double level_step = 0.5;
  std::vector<KwStage> stages;
  std::vector<PointCloud> epi_clouds;
  for (int nu : nus) {
    if (nu < 1) throw ValidationError("kw-density: center counts must be positive");
    KwStage stage = fit_stage(xi, GridSpec::uniform(box_lo, box_hi, nu), iters);
    std::vector<double> mix;
    mixture_objective(stage.phi, stage.mu, &mix);
    epi_clouds.push_back(
        density_epi_cloud(density_hull_samples(stage, mix), surrogate_rho, level_step));
    stages.push_back(std::move(stage));
  }

  const NormSpec epi_norm = graph_norm(static_cast<int>(xi.size()), 1);
  ReportTable t = make_table(opts, "kw-density");
  t.add_meta("sample_size", static_cast<double>(xi.size()));
  if (!sample_path.empty()) t.add_meta("sample", sample_path);
  t.add_meta("box", cfg_string(opts, "box", opts.box));
  t.add_meta("iters", static_cast<double>(iters));
  t.add_meta("surrogate_rho", surrogate_rho);
  t.add_meta("level_step", level_step);
  bool nonincreasing = true;
  for (size_t i = 1; i < stages.size(); ++i)
    nonincreasing = nonincreasing && stages[i].objective <= stages[i - 1].objective + 1e-9;
  t.add_meta("objective_nonincreasing", nonincreasing ? "true" : "false");

  t.columns = {"nu", "centers", "objective", "epi_gap"};
  SvgSeries obj_series{"objective", {}, {}}, gap_series{"epi gap", {}, {}};
  for (size_t i = 0; i < stages.size(); ++i) {
    double gap = std::numeric_limits<double>::quiet_NaN();
    if (i + 1 < stages.size())
      gap = truncated_hausdorff(epi_clouds[i], epi_clouds[i + 1], surrogate_rho, epi_norm)
                .value();
    t.add_row({static_cast<double>(stages[i].steps),
               static_cast<double>(stages[i].phi.size()), stages[i].objective, gap});
    obj_series.x.push_back(static_cast<double>(stages[i].steps));
    obj_series.y.push_back(stages[i].objective);
    if (std::isfinite(gap)) {
      gap_series.x.push_back(static_cast<double>(stages[i].steps));
      gap_series.y.push_back(gap);
    }
  }
  emit(opts, "kw-density", t, {obj_series, gap_series}, "mixture density fits");
}

}  // namespace setconv::demos
