#pragma once

// Shared option plumbing for the demo subcommands: flag defaults, JSON config
// overrides, grid/norm/vector argument parsing, and report output with the
// resolved configuration stamped into every CSV header.

#include <string>
#include <vector>

#include "json.hpp"
#include "setconv/grid.hpp"
#include "setconv/io.hpp"
#include "setconv/norm.hpp"

namespace setconv::demos {

struct DemoOptions {
  // Common flags.
  double rho = 2.0;
  std::string norm = "euclidean";        // euclidean | max | inline JSON | file
  std::vector<std::string> grids;        // per-axis "lo:hi:steps"
  std::string out_dir = ".";
  unsigned seed = 0;
  bool svg = false;
  std::string config_path;

  // Subcommand-specific flags (only the owning command reads them).
  std::vector<std::string> files;        // dist positionals
  std::string builtin;                   // dist --builtin
  std::string center;                    // dist --center
  std::string family = "shrinking";      // limits --family
  std::vector<int> nu_schedule;          // limits / kw-density --nus
  std::vector<double> real_schedule;     // penalty/cubic/soften/cp --thetas|--nus
  std::vector<double> lambda_schedule;   // homotopy --lambdas
  double tol = -1.0;
  double epsilon = 0.1;
  std::string field_f;                   // epi-dist / epi-bounds --f
  std::string field_g;
  std::string sample_path;               // kw-density --sample
  std::string box = "-3:3";              // kw-density --box
  int iterations = 400;                  // kw-density --iters
  std::string point = "0,0";             // cones --point
  std::string gradient = "1,1";          // cones --grad
  std::string start;                     // cp --z0 / homotopy --ybar

  nlohmann::json config;                 // parsed --config body (may be null)
};

/// Loads config_path (if set) and replaces any option whose key is present.
/// Recognized keys mirror the flag names; unknown keys are demo parameters
/// read by the individual commands via the cfg_* helpers.
void apply_config(DemoOptions& opts);

double cfg_double(const DemoOptions& opts, const char* key, double current);
int cfg_int(const DemoOptions& opts, const char* key, int current);
std::string cfg_string(const DemoOptions& opts, const char* key, std::string current);
std::vector<double> cfg_doubles(const DemoOptions& opts, const char* key,
                                std::vector<double> current);
std::vector<int> cfg_ints(const DemoOptions& opts, const char* key, std::vector<int> current);

/// "lo:hi:steps" -> one axis; all --grid occurrences form the axes in order.
GridSpec resolve_grid(const DemoOptions& opts, const GridSpec& fallback);
NormSpec resolve_norm(const DemoOptions& opts);

std::vector<double> parse_vector_arg(const std::string& text, const char* what);
void parse_range_arg(const std::string& text, const char* what, double* lo, double* hi);

/// Joined "lo:hi:steps;..." form used when stamping grids into headers.
std::string grid_to_string(const GridSpec& g);

/// New table pre-stamped with command name and the common resolved options.
ReportTable make_table(const DemoOptions& opts, const std::string& command,
                       const GridSpec* grid = nullptr);

/// Writes <out_dir>/<name>.csv; with --svg also <name>.svg from the series.
void emit(const DemoOptions& opts, const std::string& name, const ReportTable& table,
          const std::vector<SvgSeries>& series = {}, const std::string& title = "");

}  // namespace setconv::demos
