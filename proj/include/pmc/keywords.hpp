#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pmc/corpus.hpp"

namespace pmc {

struct FrequencyEntry {
  std::string term;
  long long count = 0;
  friend bool operator==(const FrequencyEntry&, const FrequencyEntry&) = default;
};

/// Sorted by count descending, then term ascending.
using FrequencyTable = std::vector<FrequencyEntry>;

struct KeywordScore {
  std::string term;
  double tfidf = 0.0;
  double textrank = 0.0;
  double fused = 0.0;
};

struct TextRankParams {
  int window = 5;
  double damping = 0.85;
  double tol = 1e-6;
  int max_iter = 100;

  void validate() const;
};

struct TextRankResult {
  std::vector<KeywordScore> scores;  ///< textrank populated, sorted by (score desc, term asc)
  bool converged = false;
  int iterations = 0;
  double residual = 0.0;                ///< L1 change of the last iteration
  std::vector<double> residual_history;  ///< one entry per iteration
};

/// Weighted co-occurrence graph over the distinct terms of one stream.
struct WindowGraph {
  std::vector<std::string> terms;  ///< sorted
  Eigen::SparseMatrix<double> weights;  ///< symmetric, zero diagonal
};

FrequencyTable term_frequencies(std::span<const TokenStream> streams);

/// Per-document TF-IDF with tf = count/len and idf = ln(N/df). One list per
/// stream (terms present in that document), sorted by (tfidf desc, term asc).
std::vector<std::vector<KeywordScore>> tfidf(std::span<const TokenStream> streams);

/// Every pair of distinct terms at positions i < j with j - i < window adds one
/// to their edge weight.
WindowGraph window_graph(const TokenStream& stream, int window);

TextRankResult textrank(const TokenStream& stream, const TextRankParams& params = {});

/// Sums each term's score over documents: the corpus-wide aggregate.
std::map<std::string, double> aggregate(const std::vector<std::vector<KeywordScore>>& per_document,
                                        double KeywordScore::*field);

/// Min-max normalization; a constant family maps to 0.5 everywhere.
template <typename Derived>
Eigen::ArrayXd min_max_normalize(const Eigen::ArrayBase<Derived>& values) {
  Eigen::ArrayXd out(values.size());
  if (values.size() == 0) return out;
  const double lo = values.minCoeff();
  const double hi = values.maxCoeff();
  if (hi == lo) return Eigen::ArrayXd::Constant(values.size(), 0.5);
  return (values.template cast<double>() - lo) / (hi - lo);
}

/// Candidates are the union of both maps (missing score = 0). Returns the top
/// `k` by fused score, ties by term ascending; k beyond the candidate count
/// returns all candidates.
std::vector<KeywordScore> fuse_keywords(const std::map<std::string, double>& tfidf_scores,
                                        const std::map<std::string, double>& textrank_scores, std::size_t k);

}  // namespace pmc
