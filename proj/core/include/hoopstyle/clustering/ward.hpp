#pragma once

#include <string>
#include <vector>

#include "hoopstyle/clustering/types.hpp"
#include "hoopstyle/transport/distance_matrix.hpp"

namespace hoopstyle::clustering {

// Node ids follow the usual linkage convention: leaves are 0..n-1 and the
// t-th merge creates node n + t.
struct Merge {
  int left = 0;   // node holding the smaller minimum leaf index
  int right = 0;
  double height = 0.0;  // on the distance scale
  int size = 0;
};

struct Dendrogram {
  std::vector<Merge> merges;  // n - 1 records
  std::vector<std::string> leaf_labels;

  int n_leaves() const { return static_cast<int>(leaf_labels.size()); }
};

// Ward agglomeration on a precomputed dissimilarity matrix. The
// Lance-Williams recurrence runs on squared dissimilarities; reported heights
// are their square roots. Among equal candidate merges the pair with the
// lexicographically smallest (min leaf of A, min leaf of B) wins.
Dendrogram ward_linkage(const transport::DistanceMatrix& dm);

// Applies the first n - k merges. Cluster labels are ordered by size
// (descending), then by smallest member index.
HardAssignment cut_dendrogram(const Dendrogram& dendrogram, int k);

std::string dendrogram_to_json(const Dendrogram& dendrogram);

}  // namespace hoopstyle::clustering
