#include <exception>
#include <iostream>

#include "CLI11.hpp"
#include "demo_common.hpp"
#include "demos.hpp"
#include "setconv/errors.hpp"

namespace {

void add_common_flags(CLI::App* cmd, setconv::demos::DemoOptions& o) {
  cmd->add_option("--rho", o.rho, "Truncation radius for set distances");
  cmd->add_option("--norm", o.norm, "euclidean | max | inline JSON | spec file");
  cmd->add_option("--grid", o.grids, "Grid axis as lo:hi:steps (repeat per axis)");
  cmd->add_option("--out", o.out_dir, "Directory for CSV/SVG reports");
  cmd->add_option("--seed", o.seed, "Seed for randomized demo inputs");
  cmd->add_option("--config", o.config_path, "JSON file overriding flags");
  cmd->add_flag("--svg", o.svg, "Also render SVG charts");
}

}  // namespace

int main(int argc, char** argv) {
  using setconv::demos::DemoOptions;
  CLI::App app{"Set-convergence demos: sampled set distances, epigraph bounds, "
               "and approximation/solver diagnostics with CSV reports"};
  app.require_subcommand(1);
  DemoOptions o;
  // Config overrides are applied after flag parsing, before the command body.
  auto run = [&o](void (*body)(DemoOptions&)) {
    return [&o, body] {
      setconv::demos::apply_config(o);
      body(o);
    };
  };

  auto* dist = app.add_subcommand("dist", "Truncated Hausdorff distance between two clouds");
  dist->add_option("clouds", o.files, "Two point-cloud JSON files")->expected(0, 2);
  dist->add_option("--builtin", o.builtin, "Named instance instead of files (sharpness)");
  dist->add_option("--center", o.center, "Truncation center as c1,c2,...");
  dist->callback(run(setconv::demos::run_dist));

  auto* limits = app.add_subcommand("limits", "Inner/outer set-limit estimates");
  limits->add_option("--family", o.family, "shrinking | oddeven | intersection");
  limits->add_option("--nus", o.nu_schedule, "Index schedule")->delimiter(',');
  limits->add_option("--tol", o.tol, "Probe acceptance tolerance");
  limits->callback(run(setconv::demos::run_limits));

  auto* epi_dist = app.add_subcommand("epi-dist", "Epigraph distance between two functions");
  epi_dist->add_option("--f", o.field_f, "Scalar field JSON (inline or file)");
  epi_dist->add_option("--g", o.field_g, "Scalar field JSON (inline or file)");
  epi_dist->callback(run(setconv::demos::run_epi_dist));

  auto* epi_bounds = app.add_subcommand("epi-bounds", "Minima/near-argmin error bounds");
  epi_bounds->add_option("--f", o.field_f, "Scalar field JSON (inline or file)");
  epi_bounds->add_option("--g", o.field_g, "Scalar field JSON (inline or file)");
  epi_bounds->add_option("--epsilon", o.epsilon, "Near-argmin level");
  epi_bounds->callback(run(setconv::demos::run_epi_bounds));

  auto* penalty = app.add_subcommand("penalty", "Quadratic penalty family vs its epi-limit");
  penalty->add_option("--thetas", o.real_schedule, "Penalty parameters")->delimiter(',');
  penalty->callback(run(setconv::demos::run_penalty));

  auto* cubic = app.add_subcommand("cubic", "Naive constraint substitution instability");
  cubic->add_option("--nus", o.real_schedule, "Constraint accuracy parameters")->delimiter(',');
  cubic->callback(run(setconv::demos::run_cubic));

  auto* soften = app.add_subcommand("soften", "Constraint softening with epigraph control");
  soften->add_option("--nus", o.real_schedule, "Softening parameters")->delimiter(',');
  soften->callback(run(setconv::demos::run_soften));

  auto* kw = app.add_subcommand("kw-density", "Nonparametric mixture density fits");
  kw->add_option("--sample", o.sample_path, "1-D sample cloud JSON file");
  kw->add_option("--nus", o.nu_schedule, "Center-grid subdivision schedule")->delimiter(',');
  kw->add_option("--box", o.box, "Center window as lo:hi");
  kw->add_option("--iters", o.iterations, "Maximum multiplicative updates");
  kw->callback(run(setconv::demos::run_kw_density));

  auto* cp = app.add_subcommand("cp", "Smoothed Newton on a complementarity problem");
  cp->add_option("--thetas", o.real_schedule, "Smoothing schedule")->delimiter(',');
  cp->add_option("--z0", o.start, "Starting point as z1,z2,...");
  cp->callback(run(setconv::demos::run_cp));

  auto* homotopy = app.add_subcommand("homotopy", "Continuation toward a target equation");
  homotopy->add_option("--lambdas", o.lambda_schedule, "Continuation schedule")->delimiter(',');
  homotopy->add_option("--ybar", o.start, "Target value as y1,y2,...");
  homotopy->callback(run(setconv::demos::run_homotopy));

  auto* cones = app.add_subcommand("cones", "Tangent/normal cones and optimality residual");
  cones->add_option("--point", o.point, "Base point as x1,x2,...");
  cones->add_option("--grad", o.gradient, "Objective gradient at the point");
  cones->callback(run(setconv::demos::run_cones));

  for (CLI::App* cmd : {dist, limits, epi_dist, epi_bounds, penalty, cubic, soften, kw, cp,
                        homotopy, cones})
    add_common_flags(cmd, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const setconv::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const setconv::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
