#include "setconv/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "setconv/errors.hpp"

namespace setconv {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void ReportTable::add_meta(const std::string& key, const std::string& value) {
  meta.emplace_back(key, value);
}

void ReportTable::add_meta(const std::string& key, double value) {
  meta.emplace_back(key, format_number(value));
}

void ReportTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size())
    throw ValidationError("ReportTable::add_row: row size does not match columns");
  rows.push_back(std::move(row));
}

std::string ReportTable::to_csv() const {
  std::ostringstream out;
  for (const auto& [k, v] : meta) out << "# " << k << " = " << v << "\n";
  for (size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << "\n";
  }
  return out.str();
}

void ReportTable::write_csv(const std::filesystem::path& path) const {
  write_text_file(path, to_csv());
}

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string render_svg_lines(const std::vector<SvgSeries>& series, const std::string& title) {
  const double width = 640, height = 420;
  const double ml = 60, mr = 20, mt = 40, mb = 40;

  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& s : series)
    for (size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x_lo = std::min(x_lo, s.x[i]);
      x_hi = std::max(x_hi, s.x[i]);
      y_lo = std::min(y_lo, s.y[i]);
      y_hi = std::max(y_hi, s.y[i]);
    }
  if (!(x_lo <= x_hi)) {
    x_lo = 0;
    x_hi = 1;
    y_lo = 0;
    y_hi = 1;
  }
  if (x_hi == x_lo) x_hi = x_lo + 1;
  if (y_hi == y_lo) y_hi = y_lo + 1;

  auto px = [&](double x) { return ml + (x - x_lo) / (x_hi - x_lo) * (width - ml - mr); };
  auto py = [&](double y) { return height - mb - (y - y_lo) / (y_hi - y_lo) * (height - mt - mb); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
      << title << "</text>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
      << "\" y2=\"" << height - mb << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
      << height - mb << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = x_lo + (x_hi - x_lo) * t / 4;
    const double yv = y_lo + (y_hi - y_lo) * t / 4;
    out << "<text x=\"" << px(xv) << "\" y=\"" << height - mb + 16
        << "\" text-anchor=\"middle\" font-size=\"11\">" << svg_num(xv) << "</text>\n";
    out << "<text x=\"" << ml - 6 << "\" y=\"" << py(yv) + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << svg_num(yv) << "</text>\n";
  }
  for (size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
    std::ostringstream pts;
    bool open = false;
    auto flush = [&]() {
      if (open) {
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\""
            << pts.str() << "\"/>\n";
        pts.str("");
        open = false;
      }
    };
    for (size_t i = 0; i < series[s].x.size() && i < series[s].y.size(); ++i) {
      const double xv = series[s].x[i], yv = series[s].y[i];
      if (!std::isfinite(xv) || !std::isfinite(yv)) {
        flush();
        continue;
      }
      pts << svg_num(px(xv)) << "," << svg_num(py(yv)) << " ";
      open = true;
    }
    flush();
    out << "<text x=\"" << width - mr - 6 << "\" y=\"" << mt + 16 * (s + 1)
        << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color << "\">" << series[s].label
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open file for writing: " + path.string());
  out << content;
  if (!out) throw NumericalError("write failed: " + path.string());
}

}  // namespace setconv
