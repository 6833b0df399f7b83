#pragma once

#include <filesystem>
#include <iosfwd>
#include <regex>
#include <string>
#include <vector>

namespace pmc {

/// Evidence for one scoreable item: keyword terms compared against tokens and
/// regular expressions (ECMAScript) searched in the case-folded normalized body.
struct EvidenceRules {
  std::vector<std::string> keywords;  ///< normalized, case-folded
  std::vector<std::string> patterns;
  std::vector<std::regex> compiled;   ///< parallel to `patterns`

  bool empty() const noexcept { return keywords.empty() && patterns.empty(); }
};

struct SubVariable {
  std::string id;
  std::string name;
  EvidenceRules rules;
};

/// A main variable. Sub-variables carry equal weight; there is no weight field.
/// A direct variable has no sub-variables and is itself its only scoreable item.
struct MainVariable {
  std::string id;
  std::string name;
  bool direct = false;
  std::vector<SubVariable> sub_variables;
  EvidenceRules direct_rules;

  /// n_i: number of scoreable items.
  std::size_t item_count() const noexcept { return direct ? 1 : sub_variables.size(); }
  /// Ids of the scoreable items in order (the variable's own id if direct).
  std::vector<std::string> item_ids() const;
  const EvidenceRules& rules_for(std::size_t item) const;
};

struct IndicatorSchema {
  std::vector<MainVariable> main_variables;

  std::size_t item_count() const;
  std::vector<std::string> item_ids() const;
  const MainVariable* find_main(const std::string& id) const;
  bool has_item(const std::string& id) const;
};

/// Loads and validates a JSON schema file. Duplicate ids, empty main variables
/// and malformed patterns are reported together, each naming its id.
IndicatorSchema load_schema(const std::filesystem::path& path);
IndicatorSchema parse_schema(const std::string& json_text);

/// One row per main variable with its n_i slot labels.
struct MiotRow {
  std::string main_id;
  std::vector<std::string> slots;
  friend bool operator==(const MiotRow&, const MiotRow&) = default;
};

struct MiotTable {
  std::vector<MiotRow> rows;
  friend bool operator==(const MiotTable&, const MiotTable&) = default;
};

MiotTable build_miot(const IndicatorSchema& schema);

/// CSV: header "main_variable,slot_1..slot_w", rows "P1,P11:1,P12:2,..." padded
/// with empty cells to the widest row.
void write_miot_csv(std::ostream& out, const MiotTable& table);
MiotTable parse_miot_csv(const std::string& text);

}  // namespace pmc
