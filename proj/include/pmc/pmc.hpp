#pragma once

#include <Eigen/Core>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pmc/schema.hpp"
#include "pmc/scoring.hpp"

namespace pmc {

enum class IntensityLevel { Low, Acceptable, Good, Perfect };

std::string_view to_string(IntensityLevel level);

/// Half-open bracket [lower, upper) over G; the top bracket is closed at 10.
struct IntensityBracket {
  IntensityLevel level;
  double lower;
  double upper;
};

/// Brackets in ascending order: Low [0,1), Acceptable [1,3), Good [3,5), Perfect [5,10].
std::span<const IntensityBracket> intensity_brackets();

struct PmcResult {
  std::string doc_id;
  Eigen::VectorXd main_values;  ///< P_i in schema order, full precision
  double pmc = 0.0;
  double g = 0.0;
  IntensityLevel level = IntensityLevel::Low;
  std::optional<Eigen::Matrix3d> surface;  ///< present when the schema has >= 9 main variables
};

/// (sum_j P_ij) / n_i.
double main_variable_value(const Scorecard& scorecard, const IndicatorSchema& schema, const std::string& main_id);

/// Sum of the main-variable values. Throws ComputeError listing missing ids.
double pmc_index(const Scorecard& scorecard, const IndicatorSchema& schema);

/// 10 - pmc; pmc must lie in [0, 10].
double guarantee_intensity(double pmc);

IntensityLevel classify_intensity(double g);

/// [[P1,P2,P3],[P4,P5,P6],[P7,P8,P9]] from the first nine values.
template <typename Derived>
Eigen::Matrix3d surface_matrix(const Eigen::DenseBase<Derived>& main_values);

PmcResult evaluate(const Scorecard& scorecard, const IndicatorSchema& schema);

struct ColumnStats {
  std::string variable;
  std::size_t count = 0;
  double mean = 0.0;
  double sd = 0.0;  ///< sample standard deviation (divisor n - 1); 0 for a single value
  double min = 0.0;
  double max = 0.0;
};

/// Count, mean, sample sd, min, max of any real expression.
template <typename Derived>
ColumnStats describe(const Eigen::DenseBase<Derived>& column, std::string variable = {}) {
  ColumnStats stats;
  stats.variable = std::move(variable);
  stats.count = static_cast<std::size_t>(column.size());
  const Eigen::ArrayXd values = column.derived().template cast<double>().array();
  stats.mean = values.mean();
  stats.min = values.minCoeff();
  stats.max = values.maxCoeff();
  if (values.size() > 1)
    stats.sd = std::sqrt((values - stats.mean).square().sum() / static_cast<double>(values.size() - 1));
  return stats;
}

/// One row per main variable (schema order), then PMC and G. Results must
/// share one schema.
std::vector<ColumnStats> descriptive_stats(std::span<const PmcResult> results, const IndicatorSchema& schema);

}  // namespace pmc

#include "pmc/pmc_impl.hpp"
