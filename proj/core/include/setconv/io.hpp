#pragma once

// Deterministic report output: CSV tables with a `# key = value` header
// block, and small static SVG line charts. No timestamps, no locale
// dependence; identical inputs produce byte-identical files.

#include <filesystem>
#include <string>
#include <vector>

namespace setconv {

/// %.12g with non-finite values spelled "inf", "-inf", "nan".
std::string format_number(double v);

struct ReportTable {
  std::vector<std::pair<std::string, std::string>> meta;  // emitted in order
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_meta(const std::string& key, const std::string& value);
  void add_meta(const std::string& key, double value);
  void add_row(std::vector<double> row);  // size must match columns

  std::string to_csv() const;
  void write_csv(const std::filesystem::path& path) const;
};

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// 640x420 line chart; non-finite points break the polyline.
std::string render_svg_lines(const std::vector<SvgSeries>& series, const std::string& title);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace setconv
