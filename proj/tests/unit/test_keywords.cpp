#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pmc/error.hpp"
#include "pmc/keywords.hpp"

using namespace pmc;

namespace {

std::vector<TokenStream> streams_of(const std::vector<std::vector<std::string>>& docs) {
  std::vector<TokenStream> out;
  for (std::size_t i = 0; i < docs.size(); ++i) out.push_back({std::to_string(i + 1), docs[i]});
  return out;
}

std::vector<std::vector<std::string>> random_docs(std::mt19937& rng, std::size_t n_docs, std::size_t vocab,
                                                  std::size_t min_len, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> term(0, vocab - 1), len(min_len, max_len);
  std::vector<std::vector<std::string>> docs(n_docs);
  for (auto& doc : docs)
    for (std::size_t k = len(rng); k > 0; --k) doc.push_back("t" + std::to_string(term(rng)));
  return docs;
}

double score_of(const std::vector<KeywordScore>& scores, const std::string& term, double KeywordScore::*field) {
  for (const auto& s : scores)
    if (s.term == term) return s.*field;
  return 0.0;
}

}  // namespace

TEST_CASE("term_frequencies counts and orders") {
  const auto a = streams_of({{"a", "b", "a"}});
  CHECK(term_frequencies(a) == FrequencyTable{{"a", 2}, {"b", 1}});
  const auto twice = streams_of({{"x"}, {"x"}});
  CHECK(term_frequencies(twice) == FrequencyTable{{"x", 2}});
  const auto tie = streams_of({{"b", "a", "c", "c"}});
  CHECK(term_frequencies(tie) == FrequencyTable{{"c", 2}, {"a", 1}, {"b", 1}});
  CHECK_THROWS_AS(term_frequencies(std::span<const TokenStream>{}), InputError);
}

TEST_CASE("term_frequencies equals a hash-map counting oracle") {
  std::mt19937 rng(5);
  const auto docs = random_docs(rng, 5, 40, 20, 60);
  const auto expected = oracle::count_terms(docs);
  const auto table = term_frequencies(streams_of(docs));
  REQUIRE(table.size() == expected.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    CHECK(table[i].count == expected.at(table[i].term));
    if (i > 0) {
      const bool ordered = table[i - 1].count > table[i].count ||
                           (table[i - 1].count == table[i].count && table[i - 1].term < table[i].term);
      CHECK(ordered);
    }
  }
}

TEST_CASE("tfidf formula cases") {
  SUBCASE("a term in every document scores 0") {
    const auto scores = tfidf(streams_of({{"a", "b"}, {"a", "c"}, {"a"}}));
    for (const auto& doc : scores) CHECK(score_of(doc, "a", &KeywordScore::tfidf) == 0.0);
  }
  SUBCASE("single document scores 0 everywhere") {
    const auto scores = tfidf(streams_of({{"a", "b", "b"}}));
    REQUIRE(scores.front().size() == 2);
    for (const auto& s : scores.front()) CHECK(s.tfidf == 0.0);
  }
  SUBCASE("three-document fixture") {
    const std::vector<std::vector<std::string>> docs{{"a", "b"}, {"a", "c"}, {"c", "c"}};
    const auto scores = tfidf(streams_of(docs));
    CHECK(score_of(scores[0], "b", &KeywordScore::tfidf) == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-12));
    CHECK(score_of(scores[0], "b", &KeywordScore::tfidf) == doctest::Approx(0.5493).epsilon(1e-4));
    for (std::size_t d = 0; d < docs.size(); ++d)
      for (const std::string term : {"a", "b", "c"})
        CHECK(score_of(scores[d], term, &KeywordScore::tfidf) ==
              doctest::Approx(oracle::tfidf(docs, d, term)).epsilon(1e-12));
  }
  SUBCASE("empty document contributes no scores") {
    const auto scores = tfidf(streams_of({{"a"}, {}}));
    CHECK(scores[1].empty());
  }
}

TEST_CASE("tfidf is non-negative") {
  std::mt19937 rng(11);
  const auto docs = random_docs(rng, 8, 25, 5, 30);
  for (const auto& doc : tfidf(streams_of(docs)))
    for (const auto& s : doc) CHECK(s.tfidf >= 0.0);
}

TEST_CASE("textrank small graphs") {
  SUBCASE("isolated vertex scores 1 - d") {
    const auto r = textrank({"d", {"solo"}});
    REQUIRE(r.scores.size() == 1);
    CHECK(r.scores[0].textrank == doctest::Approx(0.15).epsilon(1e-15));
    CHECK(r.converged);
  }
  SUBCASE("repeated single term stays isolated") {
    const auto r = textrank({"d", {"x", "x", "x"}});
    CHECK(r.scores[0].textrank == doctest::Approx(0.15));
  }
  SUBCASE("complete graph with equal weights is symmetric") {
    const auto r = textrank({"d", {"a", "b", "c"}}, {3, 0.85, 1e-10, 100});
    REQUIRE(r.scores.size() == 3);
    CHECK(r.scores[0].textrank == doctest::Approx(1.0));
    CHECK(r.scores[1].textrank == doctest::Approx(r.scores[0].textrank).epsilon(1e-12));
    CHECK(r.scores[2].textrank == doctest::Approx(r.scores[0].textrank).epsilon(1e-12));
    CHECK(r.scores[0].term == "a");  // tie broken by term
  }
  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(textrank({"d", {"a"}}, {1, 0.85, 1e-6, 100}), InputError);
    CHECK_THROWS_AS(textrank({"d", {"a"}}, {5, 1.0, 1e-6, 100}), InputError);
    CHECK_THROWS_AS(textrank({"d", {"a"}}, {5, 0.85, 0.0, 100}), InputError);
    CHECK_THROWS_AS(textrank({"d", {"a"}}, {5, 0.85, 1e-6, 0}), InputError);
    CHECK_THROWS_AS(textrank({"d", {}}), InputError);
  }
  SUBCASE("iteration cap flags non-convergence") {
    const auto r = textrank({"d", {"a", "b", "b", "c", "a", "d"}}, {2, 0.85, 1e-15, 2});
    CHECK_FALSE(r.converged);
    CHECK(r.iterations == 2);
  }
}

TEST_CASE("window graph weights") {
  const auto g = window_graph({"d", {"a", "b", "a", "c"}}, 2);
  // pairs within distance 1: (a,b) (b,a) (a,c)
  CHECK(g.terms == std::vector<std::string>{"a", "b", "c"});
  CHECK(g.weights.coeff(0, 1) == 2.0);
  CHECK(g.weights.coeff(0, 2) == 1.0);
  CHECK(g.weights.coeff(1, 2) == 0.0);
}

TEST_CASE("textrank matches a dense power-iteration oracle on a 4-node weighted graph") {
  const std::vector<std::string> tokens{"w", "x", "w", "y", "z", "y", "w", "x", "x", "z"};
  const auto expected = oracle::textrank(tokens, 3, 0.85);
  const auto r = textrank({"d", tokens}, {3, 0.85, 1e-13, 1000});
  REQUIRE(r.converged);
  REQUIRE(r.scores.size() == 4);
  for (std::size_t i = 0; i < expected.terms.size(); ++i)
    CHECK(std::abs(score_of(r.scores, expected.terms[i], &KeywordScore::textrank) - expected.scores[i]) <= 1e-9);
}

TEST_CASE("textrank properties on random connected streams") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    // Consecutive distinct tokens make the window graph connected.
    auto docs = random_docs(rng, 1, 15, 30, 80);
    std::vector<std::string> tokens;
    for (const auto& t : docs[0])
      if (tokens.empty() || tokens.back() != t) tokens.push_back(t);
    if (tokens.size() < 2) continue;
    const TextRankParams params{5, 0.85, 1e-8, 500};
    const auto r = textrank({"d", tokens}, params);
    REQUIRE(r.converged);
    double total = 0.0;
    for (const auto& s : r.scores) total += s.textrank;
    CHECK(std::abs(total - static_cast<double>(r.scores.size())) <= 10 * params.tol);
    for (std::size_t i = 1; i < r.residual_history.size(); ++i)
      CHECK(r.residual_history[i] <= r.residual_history[i - 1] * (1 + 1e-12));
  }
}

TEST_CASE("fuse_keywords") {
  SUBCASE("term first in both families is first") {
    const auto fused = fuse_keywords({{"a", 3}, {"b", 1}, {"c", 2}}, {{"a", 9}, {"b", 5}, {"c", 0.1}}, 3);
    CHECK(fused.front().term == "a");
    CHECK(fused.front().fused == 1.0);
  }
  SUBCASE("constant tfidf family follows textrank") {
    const auto fused = fuse_keywords({{"a", 0}, {"b", 0}, {"c", 0}}, {{"a", 0.2}, {"b", 0.9}, {"c", 0.5}}, 3);
    CHECK(fused[0].term == "b");
    CHECK(fused[1].term == "c");
    CHECK(fused[2].term == "a");
    CHECK(fused[2].fused == 0.25);  // (0.5 + 0) / 2
  }
  SUBCASE("k beyond candidates returns all") {
    CHECK(fuse_keywords({{"a", 1}}, {{"b", 1}}, 10).size() == 2);
    CHECK_THROWS_AS(fuse_keywords({{"a", 1}}, {}, 0), InputError);
  }
  SUBCASE("missing scores count as zero") {
    const auto fused = fuse_keywords({{"a", 2}, {"b", 4}}, {{"a", 1}, {"c", 3}}, 3);
    // tfidf: a 0.5, b 1, c 0; textrank: a 1/3, b 0, c 1
    CHECK(score_of(fused, "a", &KeywordScore::fused) == doctest::Approx((0.5 + 1.0 / 3.0) / 2));
    CHECK(score_of(fused, "b", &KeywordScore::fused) == doctest::Approx(0.5));
    CHECK(score_of(fused, "c", &KeywordScore::fused) == doctest::Approx(0.5));
    CHECK(fused[0].term == "b");  // tie with c, term order
    CHECK(fused[1].term == "c");
    CHECK(fused[2].term == "a");
  }
}

TEST_CASE("fuse_keywords matches an arithmetic oracle on ten hand-set terms") {
  const std::vector<std::string> terms{"t0", "t1", "t2", "t3", "t4", "t5", "t6", "t7", "t8", "t9"};
  const std::vector<double> tf{0.12, 0.40, 0.05, 0.33, 0.27, 0.40, 0.01, 0.19, 0.22, 0.08};
  const std::vector<double> tr{1.10, 0.60, 2.30, 0.90, 1.50, 0.60, 1.00, 1.80, 0.75, 0.15};
  std::map<std::string, double> a, b;
  for (std::size_t i = 0; i < terms.size(); ++i) a[terms[i]] = tf[i], b[terms[i]] = tr[i];
  // Oracle: ((tf - 0.01) / 0.39 + (tr - 0.15) / 2.15) / 2, sorted by hand arithmetic.
  std::vector<std::pair<double, std::string>> expected;
  for (std::size_t i = 0; i < terms.size(); ++i)
    expected.push_back({((tf[i] - 0.01) / 0.39 + (tr[i] - 0.15) / 2.15) / 2, terms[i]});
  std::sort(expected.begin(), expected.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first > y.first : x.second < y.second;
  });
  const auto fused = fuse_keywords(a, b, 10);
  REQUIRE(fused.size() == 10);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(fused[i].term == expected[i].second);
    CHECK(fused[i].fused == doctest::Approx(expected[i].first).epsilon(1e-12));
  }
}

TEST_CASE("fuse_keywords order is invariant under positive affine rescaling") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::map<std::string, double> a, b, a2, b2;
    const double scale_a = 0.1 + 10 * u(rng), shift_a = 5 * u(rng);
    const double scale_b = 0.1 + 10 * u(rng), shift_b = 5 * u(rng);
    for (int i = 0; i < 12; ++i) {
      const std::string term = "k" + std::to_string(i);
      a[term] = u(rng), b[term] = u(rng);
      a2[term] = scale_a * a[term] + shift_a;
      b2[term] = scale_b * b[term] + shift_b;
    }
    const auto x = fuse_keywords(a, b, 12), y = fuse_keywords(a2, b2, 12);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(x[i].term == y[i].term);
  }
}

TEST_CASE("aggregate sums per-document scores") {
  std::vector<std::vector<KeywordScore>> docs{{{"a", 0, 1.0, 0}, {"b", 0, 2.0, 0}}, {{"a", 0, 0.5, 0}}};
  const auto totals = aggregate(docs, &KeywordScore::textrank);
  CHECK(totals.at("a") == 1.5);
  CHECK(totals.at("b") == 2.0);
}
