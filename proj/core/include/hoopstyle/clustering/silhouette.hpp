#pragma once

#include <utility>
#include <vector>

#include "hoopstyle/clustering/types.hpp"
#include "hoopstyle/clustering/ward.hpp"
#include "hoopstyle/transport/distance_matrix.hpp"

namespace hoopstyle::clustering {

// Per-point silhouette from precomputed distances. Points in singleton
// clusters score 0, as do points with a = b = 0.
std::vector<double> silhouette_samples(const transport::DistanceMatrix& dm,
                                       const HardAssignment& assignment);

double silhouette_mean(const transport::DistanceMatrix& dm, const HardAssignment& assignment);

struct SilhouettePoint {
  int k = 0;
  double mean = 0.0;
};

// One dendrogram cut and score per k in [k_min, min(k_max, n)].
std::vector<SilhouettePoint> silhouette_sweep(const transport::DistanceMatrix& dm,
                                              const Dendrogram& dendrogram, int k_min = 2,
                                              int k_max = 20);

// k with the highest mean silhouette (smallest k on ties).
int silhouette_argmax(const std::vector<SilhouettePoint>& sweep);

}  // namespace hoopstyle::clustering
