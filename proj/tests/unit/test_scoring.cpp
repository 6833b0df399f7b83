#include <doctest.h>

#include <iterator>
#include <random>
#include <regex>
#include <sstream>

#include "pmc/corpus.hpp"
#include "pmc/error.hpp"
#include "pmc/scoring.hpp"
#include "support.hpp"

using namespace pmc;

namespace {

IndicatorSchema small_schema() {
  return parse_schema(R"({"main_variables":[
    {"id":"P1","name":"a","sub_variables":[
      {"id":"P11","name":"x","keywords":["risk"]},
      {"id":"P12","name":"y","keywords":["debt","bond"]},
      {"id":"P13","name":"z","patterns":["fiscal\\s+transparency"]}]},
    {"id":"P2","name":"b","sub_variables":[
      {"id":"P21","name":"u","keywords":["audit"]},
      {"id":"P22","name":"v","patterns":["\\d{4}"]},
      {"id":"P23","name":"w"}]}]})");
}

Scorecard suggest(const std::string& body, const IndicatorSchema& schema) {
  PolicyDocument doc{"d", "t", "", IsoDate::parse("2020-01"), "", body};
  const std::set<std::string> none;
  return suggest_scores(doc, segment(doc, Dictionary{}, none), schema);
}

}  // namespace

TEST_CASE("keyword and pattern rules") {
  const auto schema = small_schema();
  const auto card = suggest("Managing RISK of hidden debt", schema);
  CHECK(card.value("P11") == 1);
  CHECK(card.cells.at("P11").provenance.to_string() == "rule:kw:risk");
  CHECK(card.value("P12") == 1);
  CHECK(card.value("P13") == 0);
  CHECK(card.cells.at("P13").provenance.to_string() == "default-zero");
  CHECK(card.value("P23") == 0);

  const auto none = suggest("nothing relevant here", schema);
  for (const auto& id : schema.item_ids()) CHECK(none.value(id) == 0);
  CHECK(none.missing(schema).empty());

  const auto pattern = suggest("Improve Fiscal   transparency by 2025", schema);
  CHECK(pattern.value("P13") == 1);
  CHECK(pattern.cells.at("P13").provenance.to_string() == "rule:re:0");
  CHECK(pattern.value("P22") == 1);
}

TEST_CASE("suggestions agree with a linear-scan oracle") {
  const auto schema = small_schema();
  const std::vector<std::string> bodies{"risk audit 1999", "bond fiscal transparency", "plain words only",
                                        "Audit the DEBT"};
  for (const auto& body : bodies) {
    const auto card = suggest(body, schema);
    // oracle: lowercase split on spaces, std::regex on the lowercase body
    std::string lower;
    for (char c : body) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    std::istringstream words(lower);
    std::set<std::string> tokens{std::istream_iterator<std::string>(words), {}};
    auto has = [&](const char* w) { return tokens.count(w) ? 1 : 0; };
    CHECK(card.value("P11") == has("risk"));
    CHECK(card.value("P12") == (has("debt") | has("bond")));
    CHECK(card.value("P13") == (std::regex_search(lower, std::regex("fiscal\\s+transparency")) ? 1 : 0));
    CHECK(card.value("P21") == has("audit"));
    CHECK(card.value("P22") == (std::regex_search(lower, std::regex("\\d{4}")) ? 1 : 0));
  }
}

TEST_CASE("overrides") {
  const auto schema = small_schema();
  const auto suggested = suggest("risk", schema);
  CHECK(resolve_scorecard(suggested, {}, schema) == suggested);

  const std::vector<Override> overrides{{"d", "P11", 0}, {"d", "P23", 1}, {"other", "P12", 1}};
  const auto resolved = resolve_scorecard(suggested, overrides, schema);
  CHECK(resolved.value("P11") == 0);
  CHECK(resolved.cells.at("P11").provenance.to_string() == "manual");
  CHECK(resolved.value("P23") == 1);
  CHECK(resolved.value("P12") == 0);
  CHECK(resolve_scorecard(resolved, overrides, schema) == resolved);
  CHECK_THROWS_AS(resolve_scorecard(suggested, {{"d", "P99", 1}}, schema), InputError);
}

TEST_CASE("override monotonicity over random cards") {
  const auto schema = small_schema();
  const auto ids = schema.item_ids();
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Scorecard card{"d", {}};
    for (const auto& id : ids) card.cells[id] = {static_cast<int>(rng() % 2), {}};
    const auto& id = ids[rng() % ids.size()];
    const auto up = resolve_scorecard(card, {{"d", id, 1}}, schema);
    for (const auto& other : ids) CHECK(up.value(other) >= card.value(other));
  }
}

TEST_CASE("scorecard CSV") {
  const auto schema = load_schema(testing::default_schema());
  const auto cards = read_scorecards(testing::fixtures() / "table7_scorecards.csv", schema);
  REQUIRE(cards.size() == 17);
  const auto& y2011 = cards[3];
  CHECK(y2011.doc_id == "4");
  CHECK(y2011.missing(schema).empty());
  CHECK(y2011.value("P11") == 1);
  CHECK(y2011.value("P12") == 0);
  CHECK(y2011.value("P21") == 1);
  CHECK(y2011.value("P22") == 1);
  CHECK(y2011.value("P23") == 0);

  std::ostringstream out;
  write_scorecards(out, cards, schema);
  CHECK(parse_scorecards(out.str(), schema) == cards);

  CHECK_THROWS_AS(parse_scorecards("doc,sub,value,source\n", schema), InputError);
  CHECK_THROWS_AS(parse_scorecards("doc_id,subvar_id,value,source\n1,P11,2,manual\n", schema), InputError);
  CHECK_THROWS_AS(parse_scorecards("doc_id,subvar_id,value,source\n1,P99,1,manual\n", schema), InputError);
}
