#include "pmc/coword.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include "json.hpp"
#include <set>
#include <unordered_map>

#include "pmc/error.hpp"

namespace pmc {

namespace {
constexpr double kTieEpsilon = 1e-12;
}

CowordMatrix coword_matrix(std::span<const TokenStream> streams, const std::vector<std::string>& terms) {
  if (terms.empty()) throw InputError("coword_matrix: empty term list");
  std::unordered_map<std::string, Eigen::Index> index;
  for (std::size_t i = 0; i < terms.size(); ++i)
    if (!index.emplace(terms[i], static_cast<Eigen::Index>(i)).second)
      throw InputError("coword_matrix: duplicate term \"" + terms[i] + "\"");

  // Incidence (documents x terms), then counts = B^T B.
  CountMatrix incidence = CountMatrix::Zero(static_cast<Eigen::Index>(streams.size()),
                                            static_cast<Eigen::Index>(terms.size()));
  for (std::size_t d = 0; d < streams.size(); ++d)
    for (const auto& token : streams[d].tokens)
      if (auto it = index.find(token); it != index.end()) incidence(static_cast<Eigen::Index>(d), it->second) = 1;

  return CowordMatrix{terms, incidence.transpose() * incidence};
}

Eigen::MatrixXd cosine_distances(const CountMatrix& counts) {
  const Eigen::Index n = counts.rows();
  const CountMatrix gram = counts * counts.transpose();  // exact integer dot products
  Eigen::MatrixXd distance(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto norms = static_cast<double>(gram(i, i)) * static_cast<double>(gram(j, j));
      // sqrt of an exact square is exact, so identical rows give distance 0.
      const double cosine = norms == 0.0 ? 0.0 : static_cast<double>(gram(i, j)) / std::sqrt(norms);
      distance(i, j) = std::max(0.0, 1.0 - cosine);
    }
  }
  return distance;
}

Clustering hierarchical_cluster(const CowordMatrix& matrix, std::size_t k) {
  const std::size_t n = matrix.terms.size();
  if (k < 1 || k > n) throw InputError("hierarchical_cluster: k must lie in [1, " + std::to_string(n) + "]");

  Eigen::MatrixXd distance = cosine_distances(matrix.counts);
  struct Active {
    std::size_t node;
    std::size_t size;
    std::string label;
  };
  std::vector<Active> active;  // slot i keeps the row/column i of `distance`
  for (std::size_t i = 0; i < n; ++i) active.push_back({i, 1, matrix.terms[i]});
  std::vector<bool> alive(n, true);

  Clustering result;
  result.dendrogram.leaves = matrix.terms;
  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t best_a = 0, best_b = 0;
    double best = std::numeric_limits<double>::infinity();
    const std::string* best_lo = nullptr;
    const std::string* best_hi = nullptr;
    for (std::size_t i = 0; i < n; ++i) {
      if (!alive[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!alive[j]) continue;
        const double d = distance(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        const std::string* lo = &active[i].label;
        const std::string* hi = &active[j].label;
        if (*hi < *lo) std::swap(lo, hi);
        const bool tie = std::abs(d - best) <= kTieEpsilon;
        if ((!tie && d < best) || (tie && std::tie(*lo, *hi) < std::tie(*best_lo, *best_hi))) {
          best = tie ? std::min(best, d) : d;
          best_a = i, best_b = j, best_lo = lo, best_hi = hi;
        }
      }
    }
    // Lance-Williams update for average linkage, written into slot best_a.
    const double size_a = static_cast<double>(active[best_a].size);
    const double size_b = static_cast<double>(active[best_b].size);
    for (std::size_t c = 0; c < n; ++c) {
      if (!alive[c] || c == best_a || c == best_b) continue;
      const auto ia = static_cast<Eigen::Index>(best_a);
      const auto ib = static_cast<Eigen::Index>(best_b);
      const auto ic = static_cast<Eigen::Index>(c);
      const double merged = (size_a * distance(ia, ic) + size_b * distance(ib, ic)) / (size_a + size_b);
      distance(ia, ic) = distance(ic, ia) = merged;
    }
    Merge merge;
    merge.cluster_a = std::min(active[best_a].node, active[best_b].node);
    merge.cluster_b = std::max(active[best_a].node, active[best_b].node);
    merge.height = std::max(best, result.dendrogram.merges.empty() ? 0.0 : result.dendrogram.merges.back().height);
    merge.size = active[best_a].size + active[best_b].size;
    result.dendrogram.merges.push_back(merge);

    active[best_a] = {n + step, merge.size, std::min(active[best_a].label, active[best_b].label)};
    alive[best_b] = false;
  }

  result.clusters = cut_dendrogram(result.dendrogram, n - k);
  std::unordered_map<std::string, std::size_t> cluster_of;
  for (std::size_t c = 0; c < result.clusters.size(); ++c)
    for (const auto& term : result.clusters[c]) cluster_of[term] = c;
  for (const auto& term : matrix.terms) result.assignment.push_back(cluster_of.at(term));
  return result;
}

std::vector<std::vector<std::string>> cut_dendrogram(const Dendrogram& dendrogram, std::size_t merges_applied) {
  const std::size_t n = dendrogram.leaves.size();
  if (merges_applied > dendrogram.merges.size()) throw InputError("cut_dendrogram: too many merges requested");
  std::vector<std::vector<std::string>> members(n + merges_applied);
  for (std::size_t i = 0; i < n; ++i) members[i] = {dendrogram.leaves[i]};
  std::vector<bool> consumed(n + merges_applied, false);
  for (std::size_t s = 0; s < merges_applied; ++s) {
    const Merge& m = dendrogram.merges[s];
    auto& target = members[n + s];
    target = members[m.cluster_a];
    target.insert(target.end(), members[m.cluster_b].begin(), members[m.cluster_b].end());
    consumed[m.cluster_a] = consumed[m.cluster_b] = true;
  }
  std::vector<std::vector<std::string>> clusters;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (consumed[i]) continue;
    std::sort(members[i].begin(), members[i].end());
    clusters.push_back(std::move(members[i]));
  }
  std::sort(clusters.begin(), clusters.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return clusters;
}

std::string dendrogram_to_text(const Dendrogram& dendrogram) {
  const std::size_t n = dendrogram.leaves.size();
  std::vector<std::string> node_text(n + dendrogram.merges.size());
  for (std::size_t i = 0; i < n; ++i) node_text[i] = nlohmann::json(dendrogram.leaves[i]).dump();
  for (std::size_t s = 0; s < dendrogram.merges.size(); ++s) {
    const Merge& m = dendrogram.merges[s];
    char height[32];
    std::snprintf(height, sizeof height, "%.6f", m.height);
    node_text[n + s] = "(" + std::string(height) + " " + node_text[m.cluster_a] + " " + node_text[m.cluster_b] + ")";
  }
  if (n == 0) return "()\n";
  return node_text.back() + "\n";
}

}  // namespace pmc
