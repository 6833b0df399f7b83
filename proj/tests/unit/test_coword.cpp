#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "pmc/coword.hpp"
#include "pmc/error.hpp"

using namespace pmc;

namespace {

std::vector<TokenStream> streams_of(const std::vector<std::vector<std::string>>& docs) {
  std::vector<TokenStream> out;
  for (std::size_t i = 0; i < docs.size(); ++i) out.push_back({std::to_string(i), docs[i]});
  return out;
}

std::vector<std::vector<std::string>> random_docs(std::mt19937& rng, std::size_t n_docs,
                                                  const std::vector<std::string>& vocab, double keep) {
  std::bernoulli_distribution in(keep);
  std::vector<std::vector<std::string>> docs(n_docs);
  for (auto& doc : docs)
    for (const auto& t : vocab)
      if (in(rng)) doc.push_back(t);
  return docs;
}

std::vector<std::string> vocab(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("w" + std::string(i < 10 ? "0" : "") + std::to_string(i));
  return v;
}

}  // namespace

TEST_CASE("coword_matrix counting cases") {
  const auto both = coword_matrix(streams_of({{"x", "y"}, {"y", "x", "x"}}), {"x", "y"});
  CHECK(both.counts(0, 1) == 2);
  CHECK(both.counts(1, 0) == 2);
  CHECK(both.counts(0, 0) == 2);
  CHECK(both.counts(1, 1) == 2);
  const auto apart = coword_matrix(streams_of({{"x"}, {"y"}}), {"x", "y", "z"});
  CHECK(apart.counts(0, 1) == 0);
  CHECK(apart.counts(2, 2) == 0);
  CHECK_THROWS_AS(coword_matrix(streams_of({{"x"}}), {}), InputError);
}

TEST_CASE("coword_matrix equals a per-pair set-intersection oracle (8 docs x 12 terms)") {
  std::mt19937 rng(8);
  const auto terms = vocab(12);
  auto docs = random_docs(rng, 8, terms, 0.45);
  docs[0].push_back("unlisted");
  const auto expected = oracle::coword(docs, terms);
  const auto m = coword_matrix(streams_of(docs), terms);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j) {
      CHECK(m.counts(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) == expected[i][j]);
      CHECK(m.counts(i, j) == m.counts(j, i));
      CHECK(m.counts(i, j) <= std::min(m.counts(i, i), m.counts(j, j)));
    }
}

TEST_CASE("hierarchical_cluster basics") {
  // a and b have identical rows; c differs.
  CowordMatrix m{{"a", "b", "c"}, CountMatrix(3, 3)};
  m.counts << 2, 2, 0, 2, 2, 0, 0, 0, 1;
  const auto d = cosine_distances(m.counts);
  CHECK(d(0, 1) == 0.0);
  const auto c = hierarchical_cluster(m, 2);
  REQUIRE(c.dendrogram.merges.size() == 2);
  CHECK(c.dendrogram.merges[0].cluster_a == 0);
  CHECK(c.dendrogram.merges[0].cluster_b == 1);
  CHECK(c.dendrogram.merges[0].height == 0.0);
  CHECK(c.clusters == std::vector<std::vector<std::string>>{{"a", "b"}, {"c"}});
  CHECK(c.assignment == std::vector<std::size_t>{0, 0, 1});

  const auto singletons = hierarchical_cluster(m, 3);
  CHECK(singletons.clusters.size() == 3);
  CHECK(hierarchical_cluster(m, 1).clusters.size() == 1);
  CHECK_THROWS_AS(hierarchical_cluster(m, 0), InputError);
  CHECK_THROWS_AS(hierarchical_cluster(m, 4), InputError);
  CHECK(dendrogram_to_text(c.dendrogram) == "(1.000000 \"c\" (0.000000 \"a\" \"b\"))\n");
}

TEST_CASE("hierarchical_cluster matches the naive oracle up to 50 terms") {
  std::mt19937 rng(42);
  for (std::size_t n : {5u, 12u, 20u, 35u, 50u}) {
    const auto terms = vocab(n);
    const auto docs = random_docs(rng, 10, terms, 0.3);
    const auto m = coword_matrix(streams_of(docs), terms);
    std::vector<std::vector<long long>> counts(n, std::vector<long long>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) counts[i][j] = m.counts(i, j);
    const auto expected = oracle::agglomerate(counts, terms);
    const auto got = hierarchical_cluster(m, 1).dendrogram.merges;
    REQUIRE(got.size() == n - 1);
    for (std::size_t s = 0; s < got.size(); ++s) {
      INFO("n=" << n << " step=" << s);
      CHECK(got[s].cluster_a == expected[s].a);
      CHECK(got[s].cluster_b == expected[s].b);
      CHECK(got[s].size == expected[s].size);
      CHECK(std::abs(got[s].height - expected[s].height) <= 1e-9);
      if (s > 0) CHECK(got[s].height >= got[s - 1].height);
    }
  }
}

TEST_CASE("cluster partition invariants and permutation invariance") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto terms = vocab(20);
    const auto docs = random_docs(rng, 9, terms, 0.35);
    const std::size_t k = 1 + static_cast<std::size_t>(trial) % 6;
    const auto c = hierarchical_cluster(coword_matrix(streams_of(docs), terms), k);
    CHECK(c.clusters.size() == k);
    std::vector<std::string> all;
    for (const auto& cluster : c.clusters) all.insert(all.end(), cluster.begin(), cluster.end());
    std::sort(all.begin(), all.end());
    CHECK(all == terms);

    auto permuted = terms;
    std::shuffle(permuted.begin(), permuted.end(), rng);
    const auto p = hierarchical_cluster(coword_matrix(streams_of(docs), permuted), k);
    CHECK(p.clusters == c.clusters);
  }
}
