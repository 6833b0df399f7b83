#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "pmc/corpus.hpp"
#include "pmc/schema.hpp"

namespace pmc {

struct Provenance {
  enum class Kind { Manual, Rule, DefaultZero };
  Kind kind = Kind::DefaultZero;
  std::string rule_id;  ///< set for Kind::Rule, e.g. "kw:risk" or "re:0"

  /// "manual", "rule:<rule-id>" or "default-zero".
  std::string to_string() const;
  static Provenance parse(const std::string& text);
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Binary value for each scoreable item of one document.
struct Scorecard {
  struct Cell {
    int value = 0;  ///< 0 or 1
    Provenance provenance;
    friend bool operator==(const Cell&, const Cell&) = default;
  };

  std::string doc_id;
  std::map<std::string, Cell> cells;

  int value(const std::string& item_id) const;
  /// Item ids of the schema that have no cell.
  std::vector<std::string> missing(const IndicatorSchema& schema) const;
  friend bool operator==(const Scorecard&, const Scorecard&) = default;
};

/// An item is 1 when one of its keywords equals a token of the stream or one
/// of its patterns matches the case-folded body; unruled or unmatched items
/// are 0 with provenance default-zero.
Scorecard suggest_scores(const PolicyDocument& doc, const TokenStream& stream, const IndicatorSchema& schema);

/// One manual value for an item of one document.
struct Override {
  std::string doc_id;
  std::string item_id;
  int value = 0;
};

/// Manual entries replace suggested values and become provenance manual.
/// Throws InputError when an override names an item the schema lacks.
Scorecard resolve_scorecard(const Scorecard& suggested, const std::vector<Override>& overrides,
                            const IndicatorSchema& schema);

/// Scorecard CSV columns, in order: doc_id,subvar_id,value,source.
/// Rows of one document are grouped; documents keep first-appearance order.
std::vector<Scorecard> read_scorecards(const std::filesystem::path& path, const IndicatorSchema& schema);
std::vector<Scorecard> parse_scorecards(const std::string& csv_text, const IndicatorSchema& schema);
void write_scorecards(std::ostream& out, const std::vector<Scorecard>& cards, const IndicatorSchema& schema);

/// Overrides share the scorecard CSV layout; the source column is ignored.
std::vector<Override> read_overrides(const std::filesystem::path& path, const IndicatorSchema& schema);
std::vector<Override> parse_overrides(const std::string& csv_text, const IndicatorSchema& schema);

}  // namespace pmc
