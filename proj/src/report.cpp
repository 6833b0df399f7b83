#include "pmc/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "pmc/csv.hpp"
#include "pmc/error.hpp"
#include "pmc/format.hpp"

namespace pmc {

namespace {

std::string num(double v, int decimals = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s == "-0.000" || s == "-0.0" || s == "-0") s.erase(0, 1);
  return s;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string svg_open(int width, int height) {
  return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(width) + "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " +
         std::to_string(width) + " " + std::to_string(height) + "\" font-family=\"sans-serif\">\n";
}

// Linear blend from a light to a dark blue over [0, 1].
std::string heat_color(double v) {
  const double lo[3] = {247, 251, 255};
  const double hi[3] = {8, 48, 107};
  char buf[8];
  int rgb[3];
  for (int i = 0; i < 3; ++i) rgb[i] = static_cast<int>(std::lround(lo[i] + (hi[i] - lo[i]) * v));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

}  // namespace

std::string format_results(std::span<const PmcResult> results, const IndicatorSchema& schema, TableFormat format,
                           const std::vector<std::string>& column_labels) {
  if (results.empty()) throw ComputeError("format_results: no results");
  std::ostringstream out;
  const std::size_t vars = schema.main_variables.size();
  if (format == TableFormat::Csv) {
    csv::Row header{"doc_id"};
    for (const auto& main : schema.main_variables) header.push_back(main.id);
    header.insert(header.end(), {"PMC", "G", "level"});
    csv::write_row(out, header);
    for (const auto& r : results) {
      csv::Row row{r.doc_id};
      for (std::size_t i = 0; i < vars; ++i) row.push_back(format_exact(r.main_values(static_cast<Eigen::Index>(i))));
      row.insert(row.end(), {format_exact(r.pmc), format_exact(r.g), std::string(to_string(r.level))});
      csv::write_row(out, row);
    }
    return out.str();
  }

  if (!column_labels.empty() && column_labels.size() != results.size())
    throw ComputeError("format_results: one column label per result required");
  out << "| Variable |";
  for (std::size_t c = 0; c < results.size(); ++c)
    out << ' ' << (column_labels.empty() ? results[c].doc_id : column_labels[c]) << " |";
  out << "\n|---|";
  for (std::size_t c = 0; c < results.size(); ++c) out << "---:|";
  out << '\n';
  auto row = [&](const std::string& name, auto value_of) {
    out << "| " << name << " |";
    for (const auto& r : results) out << ' ' << value_of(r) << " |";
    out << '\n';
  };
  for (std::size_t i = 0; i < vars; ++i)
    row(schema.main_variables[i].id,
        [&](const PmcResult& r) { return format_fixed2(r.main_values(static_cast<Eigen::Index>(i))); });
  row("PMC", [](const PmcResult& r) { return format_fixed2(r.pmc); });
  row("G", [](const PmcResult& r) { return format_fixed2(r.g); });
  row("Level", [](const PmcResult& r) { return std::string(to_string(r.level)); });
  return out.str();
}

std::vector<ParsedResultRow> parse_results_csv(const std::string& text) {
  const auto rows = csv::parse(text);
  if (rows.empty() || rows.front().size() < 4 || rows.front().front() != "doc_id")
    throw InputError("results CSV: missing header");
  const std::size_t vars = rows.front().size() - 4;
  std::vector<ParsedResultRow> parsed;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != vars + 4) throw InputError("results CSV: row " + std::to_string(r + 1) + " has wrong width");
    ParsedResultRow p;
    p.doc_id = row[0];
    for (std::size_t i = 0; i < vars; ++i) p.main_values.push_back(parse_double(row[1 + i]));
    p.pmc = parse_double(row[1 + vars]);
    p.g = parse_double(row[2 + vars]);
    p.level = row[3 + vars];
    parsed.push_back(std::move(p));
  }
  return parsed;
}

std::string format_stats_csv(std::span<const ColumnStats> stats) {
  std::ostringstream out;
  csv::write_row(out, {"variable", "count", "mean", "sd", "min", "max"});
  for (const auto& s : stats)
    csv::write_row(out, {s.variable, std::to_string(s.count), format_exact(s.mean), format_exact(s.sd),
                         format_exact(s.min), format_exact(s.max)});
  return out.str();
}

std::string format_stats_markdown(std::span<const ColumnStats> stats) {
  std::ostringstream out;
  out << "| Variable | Number | Mean | Standard deviation | Minimum | Maximum |\n|---|---:|---:|---:|---:|---:|\n";
  for (const auto& s : stats)
    out << "| " << s.variable << " | " << s.count << " | " << format_fixed2(s.mean) << " | " << format_fixed2(s.sd)
        << " | " << format_fixed2(s.min) << " | " << format_fixed2(s.max) << " |\n";
  return out.str();
}

ChartSpec ChartSpec::surface(std::string title, const Eigen::Matrix3d& matrix, std::filesystem::path output) {
  return {ChartKind::SurfaceHeatmap, std::move(title), matrix, std::move(output)};
}

ChartSpec ChartSpec::spider(std::string title, std::vector<SpiderAxis> axes, std::filesystem::path output) {
  return {ChartKind::Spider, std::move(title), std::move(axes), std::move(output)};
}

ChartSpec ChartSpec::trend(std::string title, std::vector<TrendPoint> points, std::filesystem::path output) {
  return {ChartKind::Trend, std::move(title), std::move(points), std::move(output)};
}

void ChartSpec::validate() const {
  switch (kind) {
    case ChartKind::SurfaceHeatmap: {
      const auto* m = std::get_if<Eigen::Matrix3d>(&data);
      if (!m) throw ComputeError("surface chart needs a 3x3 matrix");
      if ((m->array() < 0.0).any() || (m->array() > 1.0).any())
        throw ComputeError("surface values must lie in [0, 1]");
      break;
    }
    case ChartKind::Spider: {
      const auto* axes = std::get_if<std::vector<SpiderAxis>>(&data);
      if (!axes || axes->size() < 3) throw ComputeError("spider chart needs at least 3 axes");
      for (const auto& a : *axes)
        if (a.value < 0.0 || a.value > 1.0) throw ComputeError("spider values must lie in [0, 1]");
      break;
    }
    case ChartKind::Trend: {
      const auto* points = std::get_if<std::vector<TrendPoint>>(&data);
      if (!points || points->size() < 2) throw ComputeError("trend chart needs at least 2 points");
      std::set<std::string> dates;
      for (const auto& p : *points)
        if (!dates.insert(p.date.to_string()).second)
          throw ComputeError("trend chart: duplicate date " + p.date.to_string());
      break;
    }
  }
}

Eigen::Matrix2Xd spider_vertices(std::span<const double> values, double radius) {
  const auto n = static_cast<Eigen::Index>(values.size());
  Eigen::Matrix2Xd vertices(2, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) - std::numbers::pi / 2.0;
    vertices.col(k) = radius * values[static_cast<std::size_t>(k)] * Eigen::Vector2d(std::cos(theta), std::sin(theta));
  }
  return vertices;
}

std::string render_surface(const ChartSpec& spec) {
  if (spec.kind != ChartKind::SurfaceHeatmap) throw ComputeError("render_surface: wrong chart kind");
  spec.validate();
  const auto& m = std::get<Eigen::Matrix3d>(spec.data);
  constexpr int cell = 120, left = 40, top = 60;
  std::string svg = svg_open(left * 2 + cell * 3, top + cell * 3 + 40);
  svg += "<text class=\"title\" x=\"" + std::to_string(left + cell * 3 / 2) + "\" y=\"32\" text-anchor=\"middle\" font-size=\"18\">" +
         xml_escape(spec.title) + "</text>\n";
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const double v = m(r, c);
      const int x = left + c * cell, y = top + r * cell;
      svg += "<rect class=\"cell\" x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) + "\" width=\"" +
             std::to_string(cell) + "\" height=\"" + std::to_string(cell) + "\" fill=\"" + heat_color(v) +
             "\" stroke=\"#ffffff\" stroke-width=\"2\"/>\n";
      const std::string ink = v > 0.5 ? "#ffffff" : "#000000";
      svg += "<text class=\"var\" x=\"" + std::to_string(x + 8) + "\" y=\"" + std::to_string(y + 18) +
             "\" font-size=\"12\" fill=\"" + ink + "\">P" + std::to_string(r * 3 + c + 1) + "</text>\n";
      svg += "<text class=\"value\" x=\"" + std::to_string(x + cell / 2) + "\" y=\"" + std::to_string(y + cell / 2 + 8) +
             "\" text-anchor=\"middle\" font-size=\"24\" fill=\"" + ink + "\">" + format_fixed2(v) + "</text>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

std::string render_spider(const ChartSpec& spec) {
  if (spec.kind != ChartKind::Spider) throw ComputeError("render_spider: wrong chart kind");
  spec.validate();
  const auto& axes = std::get<std::vector<SpiderAxis>>(spec.data);
  constexpr double cx = 260.0, cy = 280.0, radius = 180.0;
  std::string svg = svg_open(520, 540);
  svg += "<text class=\"title\" x=\"260\" y=\"32\" text-anchor=\"middle\" font-size=\"18\">" + xml_escape(spec.title) +
         "</text>\n";
  const std::vector<double> ones(axes.size(), 1.0);
  auto points = [&](const Eigen::Matrix2Xd& v) {
    std::string s;
    for (Eigen::Index k = 0; k < v.cols(); ++k) {
      if (k) s += ' ';
      s += num(cx + v(0, k)) + "," + num(cy + v(1, k));
    }
    return s;
  };
  for (double ring : {0.25, 0.5, 0.75, 1.0}) {
    svg += "<polygon class=\"grid\" points=\"" + points(spider_vertices(ones, radius * ring)) +
           "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
  }
  const Eigen::Matrix2Xd rim = spider_vertices(ones, radius);
  for (std::size_t k = 0; k < axes.size(); ++k) {
    const auto col = static_cast<Eigen::Index>(k);
    svg += "<line class=\"axis\" x1=\"" + num(cx) + "\" y1=\"" + num(cy) + "\" x2=\"" + num(cx + rim(0, col)) +
           "\" y2=\"" + num(cy + rim(1, col)) + "\" stroke=\"#999999\"/>\n";
    const Eigen::Vector2d at = rim.col(col) * 1.12;
    svg += "<text class=\"axis-label\" x=\"" + num(cx + at(0)) + "\" y=\"" + num(cy + at(1)) +
           "\" text-anchor=\"middle\" font-size=\"12\">" + xml_escape(axes[k].label) + " " +
           format_fixed2(axes[k].value) + "</text>\n";
  }
  std::vector<double> values;
  for (const auto& a : axes) values.push_back(a.value);
  svg += "<polygon class=\"data\" points=\"" + points(spider_vertices(values, radius)) +
         "\" fill=\"#2171b5\" fill-opacity=\"0.35\" stroke=\"#08306b\" stroke-width=\"2\"/>\n";
  svg += "</svg>\n";
  return svg;
}

std::string render_trend(const ChartSpec& spec) {
  if (spec.kind != ChartKind::Trend) throw ComputeError("render_trend: wrong chart kind");
  spec.validate();
  auto points = std::get<std::vector<TrendPoint>>(spec.data);
  std::sort(points.begin(), points.end(), [](const TrendPoint& a, const TrendPoint& b) { return a.date < b.date; });

  constexpr double width = 800, height = 420, left = 60, right = 30, top = 50, bottom = 50;
  const double x_lo = std::floor(points.front().date.decimal_year());
  const double x_hi = std::max(x_lo + 1.0, std::ceil(points.back().date.decimal_year() + 1e-9));
  auto px = [&](double year) { return left + (year - x_lo) / (x_hi - x_lo) * (width - left - right); };
  auto py = [&](double g) { return height - bottom - g / 10.0 * (height - top - bottom); };

  std::string svg = svg_open(static_cast<int>(width), static_cast<int>(height));
  svg += "<text class=\"title\" x=\"" + num(width / 2) + "\" y=\"28\" text-anchor=\"middle\" font-size=\"18\">" +
         xml_escape(spec.title) + "</text>\n";
  svg += "<line class=\"x-axis\" x1=\"" + num(left) + "\" y1=\"" + num(py(0)) + "\" x2=\"" + num(width - right) +
         "\" y2=\"" + num(py(0)) + "\" stroke=\"#000000\"/>\n";
  svg += "<line class=\"y-axis\" x1=\"" + num(left) + "\" y1=\"" + num(py(0)) + "\" x2=\"" + num(left) + "\" y2=\"" +
         num(py(10)) + "\" stroke=\"#000000\"/>\n";
  for (int g = 0; g <= 10; g += 2)
    svg += "<text class=\"y-tick\" x=\"" + num(left - 8) + "\" y=\"" + num(py(g) + 4) +
           "\" text-anchor=\"end\" font-size=\"11\">" + std::to_string(g) + "</text>\n";
  const int span_years = static_cast<int>(x_hi - x_lo);
  const int step = std::max(1, span_years / 12);
  for (int year = static_cast<int>(x_lo); year <= static_cast<int>(x_hi); year += step)
    svg += "<text class=\"x-tick\" x=\"" + num(px(year)) + "\" y=\"" + num(height - bottom + 18) +
           "\" text-anchor=\"middle\" font-size=\"11\">" + std::to_string(year) + "</text>\n";

  std::string line;
  for (const auto& p : points) {
    if (!line.empty()) line += ' ';
    line += num(px(p.date.decimal_year())) + "," + num(py(p.g));
  }
  svg += "<polyline class=\"series\" points=\"" + line + "\" fill=\"none\" stroke=\"#08306b\" stroke-width=\"2\"/>\n";
  for (const auto& p : points) {
    const double x = px(p.date.decimal_year()), y = py(p.g);
    svg += "<circle class=\"point\" cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"3.5\" fill=\"#08306b\" data-date=\"" +
           p.date.to_string() + "\"/>\n";
    svg += "<text class=\"label\" x=\"" + num(x) + "\" y=\"" + num(y - 8) + "\" text-anchor=\"middle\" font-size=\"10\" data-date=\"" +
           p.date.to_string() + "\">" + format_fixed2(p.g) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string render_svg(const ChartSpec& spec) {
  switch (spec.kind) {
    case ChartKind::SurfaceHeatmap:
      return render_surface(spec);
    case ChartKind::Spider:
      return render_spider(spec);
    case ChartKind::Trend:
      return render_trend(spec);
  }
  throw ComputeError("unknown chart kind");
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw OutputError("cannot write " + path.string());
  out << content;
  if (!out) throw OutputError("write failed for " + path.string());
}

void write_chart(const ChartSpec& spec) { write_text_file(spec.output, render_svg(spec)); }

}  // namespace pmc
