#pragma once

#include <Eigen/Core>
#include <span>
#include <string>
#include <vector>

#include "pmc/corpus.hpp"

namespace pmc {

using CountMatrix = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

/// Document-level co-occurrence: off-diagonal = documents containing both
/// terms, diagonal = document frequency.
struct CowordMatrix {
  std::vector<std::string> terms;
  CountMatrix counts;
};

struct Merge {
  std::size_t cluster_a = 0;  ///< node id: leaves 0..n-1, merge s creates node n+s
  std::size_t cluster_b = 0;
  double height = 0.0;
  std::size_t size = 0;  ///< leaves under the new node
};

struct Dendrogram {
  std::vector<std::string> leaves;
  std::vector<Merge> merges;  ///< exactly leaves.size() - 1, heights non-decreasing
};

struct Clustering {
  Dendrogram dendrogram;
  /// k clusters after applying the first n-k merges. Members sorted; clusters
  /// ordered by their smallest member.
  std::vector<std::vector<std::string>> clusters;
  std::vector<std::size_t> assignment;  ///< cluster index per input term
};

CowordMatrix coword_matrix(std::span<const TokenStream> streams, const std::vector<std::string>& terms);

/// 1 - cosine similarity between rows; a zero row has similarity 0 with everything.
Eigen::MatrixXd cosine_distances(const CountMatrix& counts);

/// Average-linkage agglomeration over cosine distances. Ties within 1e-12 go
/// to the pair with the lexicographically smallest (label_a, label_b), where a
/// cluster's label is its smallest member term.
Clustering hierarchical_cluster(const CowordMatrix& matrix, std::size_t k);

/// Cuts a dendrogram after `merges_applied` merges.
std::vector<std::vector<std::string>> cut_dendrogram(const Dendrogram& dendrogram, std::size_t merges_applied);

/// Nested-list text form: a leaf is a JSON-quoted term, an internal node is
/// "(<height> <left> <right>)" with the height printed to 6 decimals.
std::string dendrogram_to_text(const Dendrogram& dendrogram);

}  // namespace pmc
