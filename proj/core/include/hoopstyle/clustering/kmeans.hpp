#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "hoopstyle/clustering/types.hpp"

namespace hoopstyle::clustering {

// k-means++ seeding: first center uniform, the rest drawn with probability
// proportional to the squared distance to the nearest chosen center.
Eigen::MatrixXd kmeans_plus_plus(const Eigen::MatrixXd& x, int k, std::mt19937_64& rng);

struct KMeansResult {
  HardAssignment assignment;
  Eigen::MatrixXd centroids;  // k x d
  std::vector<double> inertia_history;  // after every assignment step
  int iterations = 0;
};

// Lloyd iterations from k-means++ seeding until the assignment stops
// changing or `max_iter` is reached. An empty cluster is re-seeded at the
// point farthest from its current centroid.
KMeansResult kmeans(const Eigen::MatrixXd& x, int k, std::uint64_t seed, int max_iter = 300);

// Nearest centroid per row (lowest index on ties).
std::vector<int> nearest_centroid(const Eigen::MatrixXd& x, const Eigen::MatrixXd& centroids);

}  // namespace hoopstyle::clustering
