#include "pmc/schema.hpp"

#include <fstream>
#include "json.hpp"
#include <set>
#include <sstream>

#include "pmc/csv.hpp"
#include "pmc/error.hpp"
#include "pmc/text.hpp"

namespace pmc {

using nlohmann::json;

std::vector<std::string> MainVariable::item_ids() const {
  if (direct) return {id};
  std::vector<std::string> ids;
  for (const auto& sub : sub_variables) ids.push_back(sub.id);
  return ids;
}

const EvidenceRules& MainVariable::rules_for(std::size_t item) const {
  return direct ? direct_rules : sub_variables.at(item).rules;
}

std::size_t IndicatorSchema::item_count() const {
  std::size_t total = 0;
  for (const auto& main : main_variables) total += main.item_count();
  return total;
}

std::vector<std::string> IndicatorSchema::item_ids() const {
  std::vector<std::string> ids;
  for (const auto& main : main_variables)
    for (auto& id : main.item_ids()) ids.push_back(std::move(id));
  return ids;
}

const MainVariable* IndicatorSchema::find_main(const std::string& id) const {
  for (const auto& main : main_variables)
    if (main.id == id) return &main;
  return nullptr;
}

bool IndicatorSchema::has_item(const std::string& id) const {
  for (const auto& main : main_variables)
    for (const auto& item : main.item_ids())
      if (item == id) return true;
  return false;
}

namespace {

EvidenceRules parse_rules(const json& node, const std::string& owner, std::vector<std::string>& problems) {
  EvidenceRules rules;
  if (node.contains("keywords")) {
    for (const auto& kw : node.at("keywords")) {
      std::string term = text::fold_case(text::normalize(kw.get<std::string>()));
      if (term.empty())
        problems.push_back(owner + ": empty keyword");
      else
        rules.keywords.push_back(std::move(term));
    }
  }
  if (node.contains("patterns")) {
    for (const auto& p : node.at("patterns")) {
      const std::string pattern = p.get<std::string>();
      try {
        rules.compiled.emplace_back(pattern, std::regex::ECMAScript);
        rules.patterns.push_back(pattern);
      } catch (const std::regex_error& e) {
        problems.push_back(owner + ": malformed pattern \"" + pattern + "\" (" + e.what() + ")");
      }
    }
  }
  return rules;
}

}  // namespace

IndicatorSchema parse_schema(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("schema is not valid JSON: ") + e.what());
  }
  std::vector<std::string> problems;
  IndicatorSchema schema;
  std::set<std::string> ids;
  auto claim = [&](const std::string& id, const std::string& where) {
    if (id.empty())
      problems.push_back(where + ": missing id");
    else if (!ids.insert(id).second)
      problems.push_back("duplicate id \"" + id + "\"");
  };
  try {
    const json& mains = doc.at("main_variables");
    if (!mains.is_array() || mains.empty()) throw InputError("schema has no main variables");
    for (std::size_t i = 0; i < mains.size(); ++i) {
      const json& m = mains[i];
      MainVariable main;
      main.id = m.value("id", "");
      main.name = m.value("name", "");
      main.direct = m.value("direct", false);
      claim(main.id, "main variable #" + std::to_string(i + 1));
      if (main.direct) {
        if (m.contains("sub_variables") && !m.at("sub_variables").empty())
          problems.push_back(main.id + ": direct variable must not list sub-variables");
        main.direct_rules = parse_rules(m, main.id, problems);
      } else if (m.contains("sub_variables")) {
        for (const json& s : m.at("sub_variables")) {
          SubVariable sub;
          sub.id = s.value("id", "");
          sub.name = s.value("name", "");
          claim(sub.id, main.id + " sub-variable");
          sub.rules = parse_rules(s, sub.id.empty() ? main.id : sub.id, problems);
          main.sub_variables.push_back(std::move(sub));
        }
      }
      if (main.item_count() == 0) problems.push_back(main.id + ": main variable has no sub-variables");
      schema.main_variables.push_back(std::move(main));
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed schema: ") + e.what());
  }
  if (!problems.empty())
    throw InputError(std::to_string(problems.size()) + " problem(s) in schema", std::move(problems));
  return schema;
}

IndicatorSchema load_schema(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open schema " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_schema(buf.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what(), e.diagnostics());
  }
}

MiotTable build_miot(const IndicatorSchema& schema) {
  MiotTable table;
  for (const auto& main : schema.main_variables) table.rows.push_back({main.id, main.item_ids()});
  return table;
}

void write_miot_csv(std::ostream& out, const MiotTable& table) {
  std::size_t width = 0;
  for (const auto& row : table.rows) width = std::max(width, row.slots.size());
  csv::Row header{"main_variable"};
  for (std::size_t i = 1; i <= width; ++i) header.push_back("slot_" + std::to_string(i));
  csv::write_row(out, header);
  for (const auto& row : table.rows) {
    csv::Row cells{row.main_id};
    for (std::size_t i = 0; i < width; ++i)
      cells.push_back(i < row.slots.size() ? row.slots[i] + ":" + std::to_string(i + 1) : "");
    csv::write_row(out, cells);
  }
}

MiotTable parse_miot_csv(const std::string& text) {
  const auto rows = csv::parse(text);
  if (rows.empty() || rows.front().empty() || rows.front().front() != "main_variable")
    throw InputError("MIOT CSV: missing header");
  MiotTable table;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    MiotRow row{rows[r].at(0), {}};
    for (std::size_t c = 1; c < rows[r].size(); ++c) {
      const std::string& cell = rows[r][c];
      if (cell.empty()) continue;
      const auto colon = cell.rfind(':');
      if (colon == std::string::npos || cell.substr(colon + 1) != std::to_string(row.slots.size() + 1))
        throw InputError("MIOT CSV: bad slot \"" + cell + "\" in row " + row.main_id);
      row.slots.push_back(cell.substr(0, colon));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace pmc
