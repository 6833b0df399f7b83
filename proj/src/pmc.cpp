#include "pmc/pmc.hpp"

#include <array>
#include <cmath>
#include <iostream>

namespace pmc {

namespace {

constexpr double kRangeSlack = 1e-9;

constexpr std::array<IntensityBracket, 4> kBrackets{{
    {IntensityLevel::Low, 0.0, 1.0},
    {IntensityLevel::Acceptable, 1.0, 3.0},
    {IntensityLevel::Good, 3.0, 5.0},
    {IntensityLevel::Perfect, 5.0, 10.0},
}};

}  // namespace

std::string_view to_string(IntensityLevel level) {
  switch (level) {
    case IntensityLevel::Low:
      return "Low";
    case IntensityLevel::Acceptable:
      return "Acceptable";
    case IntensityLevel::Good:
      return "Good";
    case IntensityLevel::Perfect:
      return "Perfect";
  }
  return "?";
}

std::span<const IntensityBracket> intensity_brackets() { return kBrackets; }

double main_variable_value(const Scorecard& scorecard, const IndicatorSchema& schema, const std::string& main_id) {
  const MainVariable* main = schema.find_main(main_id);
  if (!main) throw ComputeError("unknown main variable \"" + main_id + "\"");
  int set = 0;
  for (const auto& id : main->item_ids()) set += scorecard.value(id);
  return static_cast<double>(set) / static_cast<double>(main->item_count());
}

double pmc_index(const Scorecard& scorecard, const IndicatorSchema& schema) {
  const auto missing = scorecard.missing(schema);
  if (!missing.empty()) {
    std::string list;
    for (const auto& id : missing) list += (list.empty() ? "" : ", ") + id;
    throw ComputeError("scorecard " + scorecard.doc_id + " is incomplete; missing " + list);
  }
  double total = 0.0;
  for (const auto& main : schema.main_variables) total += main_variable_value(scorecard, schema, main.id);
  return total;
}

double guarantee_intensity(double pmc) {
  if (!(pmc >= -kRangeSlack && pmc <= 10.0 + kRangeSlack))
    throw ComputeError("guarantee_intensity: PMC " + std::to_string(pmc) + " outside [0, 10]");
  return 10.0 - pmc;
}

IntensityLevel classify_intensity(double g) {
  if (!(g >= -kRangeSlack && g <= 10.0 + kRangeSlack))
    throw ComputeError("classify_intensity: G " + std::to_string(g) + " outside [0, 10]");
  const double nearest = std::round(g);
  if (std::abs(g - nearest) < kRangeSlack) g = nearest;
  for (const auto& bracket : kBrackets)
    if (g >= bracket.lower && g < bracket.upper) return bracket.level;
  return IntensityLevel::Perfect;  // g == 10
}

PmcResult evaluate(const Scorecard& scorecard, const IndicatorSchema& schema) {
  PmcResult result;
  result.doc_id = scorecard.doc_id;
  result.pmc = pmc_index(scorecard, schema);
  result.main_values.resize(static_cast<Eigen::Index>(schema.main_variables.size()));
  for (std::size_t i = 0; i < schema.main_variables.size(); ++i)
    result.main_values(static_cast<Eigen::Index>(i)) =
        main_variable_value(scorecard, schema, schema.main_variables[i].id);
  result.g = guarantee_intensity(result.pmc);
  result.level = classify_intensity(result.g);
  if (result.main_values.size() >= 9) {
    if (result.main_values.size() != 10)
      std::cerr << "warning: schema has " << result.main_values.size()
                << " main variables; surface uses the first 9\n";
    result.surface = surface_matrix(result.main_values);
  }
  return result;
}

std::vector<ColumnStats> descriptive_stats(std::span<const PmcResult> results, const IndicatorSchema& schema) {
  if (results.empty()) throw ComputeError("descriptive_stats: no results");
  const auto rows = static_cast<Eigen::Index>(results.size());
  const auto vars = static_cast<Eigen::Index>(schema.main_variables.size());
  Eigen::MatrixXd table(rows, vars + 2);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const PmcResult& result = results[static_cast<std::size_t>(r)];
    if (result.main_values.size() != vars) throw ComputeError("descriptive_stats: result " + result.doc_id + " does not match the schema");
    table.row(r).head(vars) = result.main_values.transpose();
    table(r, vars) = result.pmc;
    table(r, vars + 1) = result.g;
  }
  std::vector<ColumnStats> stats;
  for (Eigen::Index c = 0; c < vars; ++c)
    stats.push_back(describe(table.col(c), schema.main_variables[static_cast<std::size_t>(c)].id));
  stats.push_back(describe(table.col(vars), "PMC"));
  stats.push_back(describe(table.col(vars + 1), "G"));
  return stats;
}

}  // namespace pmc
