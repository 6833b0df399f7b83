#include "pmc/scoring.hpp"

#include <algorithm>
#include <set>
#include <fstream>
#include <sstream>

#include "pmc/csv.hpp"
#include "pmc/error.hpp"
#include "pmc/text.hpp"

namespace pmc {

std::string Provenance::to_string() const {
  switch (kind) {
    case Kind::Manual:
      return "manual";
    case Kind::Rule:
      return "rule:" + rule_id;
    case Kind::DefaultZero:
      return "default-zero";
  }
  return {};
}

Provenance Provenance::parse(const std::string& text) {
  if (text == "manual") return {Kind::Manual, {}};
  if (text == "default-zero") return {Kind::DefaultZero, {}};
  if (text.rfind("rule:", 0) == 0 && text.size() > 5) return {Kind::Rule, text.substr(5)};
  throw InputError("unknown scorecard source \"" + text + "\"");
}

int Scorecard::value(const std::string& item_id) const {
  auto it = cells.find(item_id);
  if (it == cells.end()) throw ComputeError("scorecard " + doc_id + " has no value for " + item_id);
  return it->second.value;
}

std::vector<std::string> Scorecard::missing(const IndicatorSchema& schema) const {
  std::vector<std::string> ids;
  for (const auto& id : schema.item_ids())
    if (!cells.count(id)) ids.push_back(id);
  return ids;
}

Scorecard suggest_scores(const PolicyDocument& doc, const TokenStream& stream, const IndicatorSchema& schema) {
  const std::set<std::string> tokens(stream.tokens.begin(), stream.tokens.end());
  const std::string body = text::fold_case(doc.body);
  Scorecard card{doc.id, {}};
  for (const auto& main : schema.main_variables) {
    const auto ids = main.item_ids();
    for (std::size_t item = 0; item < ids.size(); ++item) {
      const EvidenceRules& rules = main.rules_for(item);
      Scorecard::Cell cell;
      for (const auto& kw : rules.keywords) {
        if (tokens.count(kw)) {
          cell = {1, {Provenance::Kind::Rule, "kw:" + kw}};
          break;
        }
      }
      for (std::size_t p = 0; cell.value == 0 && p < rules.compiled.size(); ++p)
        if (std::regex_search(body, rules.compiled[p])) cell = {1, {Provenance::Kind::Rule, "re:" + std::to_string(p)}};
      card.cells.emplace(ids[item], cell);
    }
  }
  return card;
}

Scorecard resolve_scorecard(const Scorecard& suggested, const std::vector<Override>& overrides,
                            const IndicatorSchema& schema) {
  Scorecard out = suggested;
  for (const auto& o : overrides) {
    if (!schema.has_item(o.item_id)) throw InputError("override names unknown sub-variable \"" + o.item_id + "\"");
    if (o.doc_id != suggested.doc_id) continue;
    out.cells[o.item_id] = {o.value, {Provenance::Kind::Manual, {}}};
  }
  return out;
}

namespace {

struct ParsedRow {
  std::string doc_id, item_id;
  int value;
  std::string source;
};

std::vector<ParsedRow> parse_rows(const std::string& csv_text, const IndicatorSchema& schema) {
  const auto rows = csv::parse(csv_text);
  if (rows.empty()) return {};
  const csv::Row expected{"doc_id", "subvar_id", "value", "source"};
  if (rows.front() != expected) throw InputError("scorecard CSV header must be doc_id,subvar_id,value,source");
  std::vector<std::string> problems;
  std::vector<ParsedRow> parsed;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string where = "row " + std::to_string(r + 1);
    if (row.size() != 4) {
      problems.push_back(where + ": expected 4 columns");
      continue;
    }
    if (!schema.has_item(row[1])) problems.push_back(where + ": unknown sub-variable \"" + row[1] + "\"");
    if (row[2] != "0" && row[2] != "1") problems.push_back(where + ": value must be 0 or 1");
    parsed.push_back({row[0], row[1], row[2] == "1" ? 1 : 0, row[3]});
  }
  if (!problems.empty()) throw InputError(std::to_string(problems.size()) + " problem(s) in scorecard CSV", problems);
  return parsed;
}

}  // namespace

std::vector<Scorecard> parse_scorecards(const std::string& csv_text, const IndicatorSchema& schema) {
  std::vector<Scorecard> cards;
  for (auto& row : parse_rows(csv_text, schema)) {
    auto it = std::find_if(cards.begin(), cards.end(), [&](const Scorecard& c) { return c.doc_id == row.doc_id; });
    if (it == cards.end()) {
      cards.push_back({row.doc_id, {}});
      it = std::prev(cards.end());
    }
    if (!it->cells.emplace(row.item_id, Scorecard::Cell{row.value, Provenance::parse(row.source)}).second)
      throw InputError("scorecard " + row.doc_id + ": repeated sub-variable " + row.item_id);
  }
  return cards;
}

std::vector<Scorecard> read_scorecards(const std::filesystem::path& path, const IndicatorSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open scorecards " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scorecards(buf.str(), schema);
}

void write_scorecards(std::ostream& out, const std::vector<Scorecard>& cards, const IndicatorSchema& schema) {
  csv::write_row(out, {"doc_id", "subvar_id", "value", "source"});
  for (const auto& card : cards)
    for (const auto& id : schema.item_ids()) {
      auto it = card.cells.find(id);
      if (it == card.cells.end()) continue;
      csv::write_row(out, {card.doc_id, id, std::to_string(it->second.value), it->second.provenance.to_string()});
    }
}

std::vector<Override> parse_overrides(const std::string& csv_text, const IndicatorSchema& schema) {
  std::vector<Override> overrides;
  for (auto& row : parse_rows(csv_text, schema)) overrides.push_back({row.doc_id, row.item_id, row.value});
  return overrides;
}

std::vector<Override> read_overrides(const std::filesystem::path& path, const IndicatorSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open overrides " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_overrides(buf.str(), schema);
}

}  // namespace pmc
