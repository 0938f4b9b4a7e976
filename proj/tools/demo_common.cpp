#include "demo_common.hpp"

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "setconv/errors.hpp"
#include "setconv/registry.hpp"

namespace setconv::demos {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string part;
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

double to_double(const std::string& text, const char* what) {
  try {
    size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ValidationError(std::string(what) + ": '" + text + "' is not a number");
  }
}

}  // namespace

void apply_config(DemoOptions& opts) {
  if (opts.config_path.empty()) return;
  try {
    opts.config = nlohmann::json::parse(opts.config_path.front() == '{'
                                            ? opts.config_path
                                            : read_text_file(opts.config_path));
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("config: invalid JSON: " + std::string(e.what()));
  }
  if (!opts.config.is_object()) throw ValidationError("config: top level must be an object");

  const auto& j = opts.config;
  if (j.contains("rho")) opts.rho = j.at("rho").get<double>();
  if (j.contains("norm")) {
    const auto& n = j.at("norm");
    opts.norm = n.is_string() ? n.get<std::string>() : n.dump();
  }
  if (j.contains("grids")) {
    opts.grids.clear();
    for (const auto& g : j.at("grids")) opts.grids.push_back(g.get<std::string>());
  }
  if (j.contains("out")) opts.out_dir = j.at("out").get<std::string>();
  if (j.contains("seed")) opts.seed = j.at("seed").get<unsigned>();
  if (j.contains("svg")) opts.svg = j.at("svg").get<bool>();
}

double cfg_double(const DemoOptions& opts, const char* key, double current) {
  if (opts.config.is_object() && opts.config.contains(key))
    return opts.config.at(key).get<double>();
  return current;
}

int cfg_int(const DemoOptions& opts, const char* key, int current) {
  if (opts.config.is_object() && opts.config.contains(key))
    return opts.config.at(key).get<int>();
  return current;
}

std::string cfg_string(const DemoOptions& opts, const char* key, std::string current) {
  if (opts.config.is_object() && opts.config.contains(key)) {
    const auto& v = opts.config.at(key);
    return v.is_string() ? v.get<std::string>() : v.dump();
  }
  return current;
}

std::vector<double> cfg_doubles(const DemoOptions& opts, const char* key,
                                std::vector<double> current) {
  if (opts.config.is_object() && opts.config.contains(key))
    return opts.config.at(key).get<std::vector<double>>();
  return current;
}

std::vector<int> cfg_ints(const DemoOptions& opts, const char* key, std::vector<int> current) {
  if (opts.config.is_object() && opts.config.contains(key))
    return opts.config.at(key).get<std::vector<int>>();
  return current;
}

GridSpec resolve_grid(const DemoOptions& opts, const GridSpec& fallback) {
  if (opts.grids.empty()) return fallback;
  GridSpec g;
  for (const std::string& axis : opts.grids) {
    const auto parts = split(axis, ':');
    if (parts.size() != 3)
      throw ValidationError("grid: expected lo:hi:steps, got '" + axis + "'");
    GridSpec::Axis a;
    a.lo = to_double(parts[0], "grid");
    a.hi = to_double(parts[1], "grid");
    a.steps = static_cast<int>(to_double(parts[2], "grid"));
    g.axes.push_back(a);
  }
  g.validate("grid");
  return g;
}

NormSpec resolve_norm(const DemoOptions& opts) {
  if (opts.norm == "euclidean") return NormSpec::euclidean();
  if (opts.norm == "max") return NormSpec::max_norm();
  if (!opts.norm.empty() && opts.norm.front() == '{') return parse_norm_json(opts.norm);
  return parse_norm_json(read_text_file(opts.norm));
}

std::vector<double> parse_vector_arg(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const std::string& part : split(text, ',')) out.push_back(to_double(part, what));
  if (out.empty()) throw ValidationError(std::string(what) + ": empty vector");
  return out;
}

void parse_range_arg(const std::string& text, const char* what, double* lo, double* hi) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw ValidationError(std::string(what) + ": expected lo:hi");
  *lo = to_double(parts[0], what);
  *hi = to_double(parts[1], what);
  if (!(*lo < *hi)) throw ValidationError(std::string(what) + ": lo must be below hi");
}

std::string grid_to_string(const GridSpec& g) {
  std::string out;
  for (size_t i = 0; i < g.axes.size(); ++i) {
    if (i) out += ";";
    out += format_number(g.axes[i].lo) + ":" + format_number(g.axes[i].hi) + ":" +
           std::to_string(g.axes[i].steps);
  }
  return out;
}

ReportTable make_table(const DemoOptions& opts, const std::string& command,
                       const GridSpec* grid) {
  ReportTable t;
  t.add_meta("command", command);
  t.add_meta("rho", opts.rho);
  t.add_meta("norm", opts.norm);
  if (grid) t.add_meta("grid", grid_to_string(*grid));
  t.add_meta("seed", static_cast<double>(opts.seed));
  return t;
}

void emit(const DemoOptions& opts, const std::string& name, const ReportTable& table,
          const std::vector<SvgSeries>& series, const std::string& title) {
  const std::filesystem::path dir(opts.out_dir);
  table.write_csv(dir / (name + ".csv"));
  if (opts.svg && !series.empty())
    write_text_file(dir / (name + ".svg"), render_svg_lines(series, title));
}

}  // namespace setconv::demos
