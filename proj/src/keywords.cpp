#include "pmc/keywords.hpp"

#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "pmc/error.hpp"

namespace pmc {

namespace {

template <typename Key>
void sort_by_score(std::vector<KeywordScore>& scores, Key key) {
  std::sort(scores.begin(), scores.end(), [&](const KeywordScore& a, const KeywordScore& b) {
    if (key(a) != key(b)) return key(a) > key(b);
    return a.term < b.term;
  });
}

}  // namespace

void TextRankParams::validate() const {
  if (window < 2) throw InputError("TextRank window must be >= 2");
  if (!(damping > 0.0 && damping < 1.0)) throw InputError("TextRank damping must lie in (0,1)");
  if (!(tol > 0.0)) throw InputError("TextRank tolerance must be positive");
  if (max_iter < 1) throw InputError("TextRank max_iter must be positive");
}

FrequencyTable term_frequencies(std::span<const TokenStream> streams) {
  if (streams.empty()) throw InputError("term_frequencies: no token streams");
  std::map<std::string, long long> counts;
  for (const auto& stream : streams)
    for (const auto& token : stream.tokens) ++counts[token];
  FrequencyTable table;
  table.reserve(counts.size());
  for (auto& [term, count] : counts) table.push_back({term, count});
  std::stable_sort(table.begin(), table.end(),
                   [](const FrequencyEntry& a, const FrequencyEntry& b) { return a.count > b.count; });
  return table;
}

std::vector<std::vector<KeywordScore>> tfidf(std::span<const TokenStream> streams) {
  if (streams.empty()) throw InputError("tfidf: no token streams");
  const double n_docs = static_cast<double>(streams.size());
  std::map<std::string, int> document_frequency;
  std::vector<std::map<std::string, int>> counts(streams.size());
  for (std::size_t d = 0; d < streams.size(); ++d) {
    for (const auto& token : streams[d].tokens) ++counts[d][token];
    for (const auto& entry : counts[d]) ++document_frequency[entry.first];
  }
  std::vector<std::vector<KeywordScore>> out(streams.size());
  for (std::size_t d = 0; d < streams.size(); ++d) {
    const double length = static_cast<double>(streams[d].tokens.size());
    for (const auto& [term, count] : counts[d]) {
      const int df = document_frequency[term];
      // ln(N/N) is exactly 0; keep it exact rather than relying on log rounding.
      const double idf = df == static_cast<int>(streams.size()) ? 0.0 : std::log(n_docs / df);
      KeywordScore score;
      score.term = term;
      score.tfidf = (count / length) * idf;
      out[d].push_back(std::move(score));
    }
    sort_by_score(out[d], [](const KeywordScore& s) { return s.tfidf; });
  }
  return out;
}

WindowGraph window_graph(const TokenStream& stream, int window) {
  if (window < 2) throw InputError("TextRank window must be >= 2");
  WindowGraph graph;
  const std::set<std::string> distinct(stream.tokens.begin(), stream.tokens.end());
  graph.terms.assign(distinct.begin(), distinct.end());
  std::unordered_map<std::string, Eigen::Index> index;
  for (std::size_t i = 0; i < graph.terms.size(); ++i) index.emplace(graph.terms[i], static_cast<Eigen::Index>(i));

  const auto n = static_cast<Eigen::Index>(graph.terms.size());
  std::vector<Eigen::Index> ids;
  ids.reserve(stream.tokens.size());
  for (const auto& token : stream.tokens) ids.push_back(index.at(token));
  std::vector<Eigen::Triplet<double>> pairs;
  const auto w = static_cast<std::size_t>(window);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size() && j - i < w; ++j) {
      if (ids[i] == ids[j]) continue;
      pairs.emplace_back(ids[i], ids[j], 1.0);
      pairs.emplace_back(ids[j], ids[i], 1.0);
    }
  }
  graph.weights.resize(n, n);
  graph.weights.setFromTriplets(pairs.begin(), pairs.end());  // duplicates summed
  return graph;
}

TextRankResult textrank(const TokenStream& stream, const TextRankParams& params) {
  params.validate();
  if (stream.tokens.empty()) throw InputError("textrank: empty token stream for \"" + stream.doc_id + "\"");
  const WindowGraph graph = window_graph(stream, params.window);
  const Eigen::Index n = graph.weights.rows();

  // Column-stochastic propagation: transition(v, u) = w(u, v) / sum_x w(u, x).
  // The weight matrix is symmetric, so scaling column u by 1/degree(u) gives it.
  Eigen::SparseMatrix<double> transition = graph.weights;
  for (Eigen::Index u = 0; u < transition.outerSize(); ++u) {
    double degree = 0.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(transition, u); it; ++it) degree += it.value();
    for (Eigen::SparseMatrix<double>::InnerIterator it(transition, u); it; ++it) it.valueRef() /= degree;
  }

  TextRankResult result;
  Eigen::VectorXd score = Eigen::VectorXd::Ones(n);
  for (int iter = 1; iter <= params.max_iter; ++iter) {
    Eigen::VectorXd next = (transition * score) * params.damping;
    next.array() += 1.0 - params.damping;
    result.residual = (next - score).lpNorm<1>();
    result.residual_history.push_back(result.residual);
    result.iterations = iter;
    score = std::move(next);
    if (result.residual < params.tol) {
      result.converged = true;
      break;
    }
  }
  result.scores.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    result.scores[static_cast<std::size_t>(i)].term = graph.terms[static_cast<std::size_t>(i)];
    result.scores[static_cast<std::size_t>(i)].textrank = score(i);
  }
  sort_by_score(result.scores, [](const KeywordScore& s) { return s.textrank; });
  return result;
}

std::map<std::string, double> aggregate(const std::vector<std::vector<KeywordScore>>& per_document,
                                        double KeywordScore::*field) {
  std::map<std::string, double> totals;
  for (const auto& doc : per_document)
    for (const auto& score : doc) totals[score.term] += score.*field;
  return totals;
}

std::vector<KeywordScore> fuse_keywords(const std::map<std::string, double>& tfidf_scores,
                                        const std::map<std::string, double>& textrank_scores, std::size_t k) {
  if (k == 0) throw InputError("fuse_keywords: k must be positive");
  std::set<std::string> candidates;
  for (const auto& entry : tfidf_scores) candidates.insert(entry.first);
  for (const auto& entry : textrank_scores) candidates.insert(entry.first);

  const auto size = static_cast<Eigen::Index>(candidates.size());
  Eigen::ArrayXd tf(size), tr(size);
  std::vector<KeywordScore> out;
  out.reserve(candidates.size());
  Eigen::Index i = 0;
  for (const auto& term : candidates) {
    const auto a = tfidf_scores.find(term);
    const auto b = textrank_scores.find(term);
    tf(i) = a == tfidf_scores.end() ? 0.0 : a->second;
    tr(i) = b == textrank_scores.end() ? 0.0 : b->second;
    out.push_back({term, tf(i), tr(i), 0.0});
    ++i;
  }
  const Eigen::ArrayXd fused = (min_max_normalize(tf) + min_max_normalize(tr)) / 2.0;
  for (Eigen::Index j = 0; j < size; ++j) out[static_cast<std::size_t>(j)].fused = fused(j);
  sort_by_score(out, [](const KeywordScore& s) { return s.fused; });
  if (out.size() > k) out.resize(k);
  return out;
}

}  // namespace pmc
