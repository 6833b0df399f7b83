#pragma once

#include <regex>
#include <string>
#include <vector>

#include "pmc/pmc.hpp"
#include "pmc/scoring.hpp"

namespace pmc::testing {

/// Card whose first counts[i] items of main variable i are 1.
inline Scorecard card_from_counts(const IndicatorSchema& schema, const std::string& doc_id,
                                  const std::vector<std::size_t>& counts) {
  Scorecard card{doc_id, {}};
  for (std::size_t m = 0; m < schema.main_variables.size(); ++m) {
    const auto ids = schema.main_variables[m].item_ids();
    for (std::size_t j = 0; j < ids.size(); ++j)
      card.cells[ids[j]] = {j < counts.at(m) ? 1 : 0, {Provenance::Kind::Manual, {}}};
  }
  return card;
}

/// Values of every <tag class="cls" ...>VALUE</tag> in document order.
inline std::vector<std::string> svg_texts(const std::string& svg, const std::string& cls) {
  std::vector<std::string> out;
  const std::regex re("<text class=\"" + cls + "\"[^>]*>([^<]*)</text>");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), re); it != std::sregex_iterator(); ++it)
    out.push_back((*it)[1]);
  return out;
}

/// The points attribute of the first element with the given class.
inline std::vector<std::pair<double, double>> svg_points(const std::string& svg, const std::string& cls) {
  std::smatch m;
  std::vector<std::pair<double, double>> out;
  if (!std::regex_search(svg, m, std::regex("class=\"" + cls + "\" points=\"([^\"]*)\""))) return out;
  const std::string pts = m[1];
  const std::regex pair_re("(-?[0-9.]+),(-?[0-9.]+)");
  for (auto it = std::sregex_iterator(pts.begin(), pts.end(), pair_re); it != std::sregex_iterator(); ++it)
    out.emplace_back(std::stod((*it)[1]), std::stod((*it)[2]));
  return out;
}

}  // namespace pmc::testing
