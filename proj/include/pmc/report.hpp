#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pmc/corpus.hpp"
#include "pmc/pmc.hpp"

namespace pmc {

enum class TableFormat { Csv, Markdown };

/// CSV: doc_id, one column per main variable, PMC, G, level; values written
/// in shortest round-trip form. Markdown: variables as rows, documents as
/// columns (headed by `column_labels`, or doc ids when empty), values at two
/// decimals half-up.
std::string format_results(std::span<const PmcResult> results, const IndicatorSchema& schema, TableFormat format,
                           const std::vector<std::string>& column_labels = {});

struct ParsedResultRow {
  std::string doc_id;
  std::vector<double> main_values;
  double pmc = 0.0;
  double g = 0.0;
  std::string level;
};

std::vector<ParsedResultRow> parse_results_csv(const std::string& text);

/// variable,count,mean,sd,min,max (exact numbers).
std::string format_stats_csv(std::span<const ColumnStats> stats);

/// Table-shaped Markdown of the statistics at two decimals.
std::string format_stats_markdown(std::span<const ColumnStats> stats);

struct SpiderAxis {
  std::string label;
  double value = 0.0;
};

struct TrendPoint {
  IsoDate date;
  double g = 0.0;
};

enum class ChartKind { SurfaceHeatmap, Spider, Trend };

struct ChartSpec {
  ChartKind kind = ChartKind::SurfaceHeatmap;
  std::string title;
  std::variant<Eigen::Matrix3d, std::vector<SpiderAxis>, std::vector<TrendPoint>> data;
  std::filesystem::path output;

  static ChartSpec surface(std::string title, const Eigen::Matrix3d& matrix, std::filesystem::path output);
  static ChartSpec spider(std::string title, std::vector<SpiderAxis> axes, std::filesystem::path output);
  static ChartSpec trend(std::string title, std::vector<TrendPoint> points, std::filesystem::path output);

  /// Throws ComputeError when the payload does not fit the kind.
  void validate() const;
};

/// Polygon vertices relative to the chart center in math orientation:
/// column k = radius * value_k * (cos t_k, sin t_k), t_k = 2 pi k / N - pi / 2.
Eigen::Matrix2Xd spider_vertices(std::span<const double> values, double radius);

std::string render_surface(const ChartSpec& spec);
std::string render_spider(const ChartSpec& spec);
std::string render_trend(const ChartSpec& spec);
/// Dispatches on kind.
std::string render_svg(const ChartSpec& spec);

/// Renders and writes spec.output.
void write_chart(const ChartSpec& spec);

/// Writes `content` to `path` byte-for-byte. Throws OutputError.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace pmc
