#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "hoopstyle/clustering/types.hpp"

namespace hoopstyle::clustering {

struct FcmOptions {
  double q = 1.2;
  double tol = 1e-8;  // relative decrease of J
  int max_iter = 500;
};

struct FcmResult {
  MembershipMatrix membership;
  std::vector<double> objective_history;  // J after init, then after each iteration
  int iterations = 0;
  bool converged = false;
};

// Memberships for fixed centroids. A point within 1e-12 of a centroid gets
// crisp membership in the nearest such centroid.
Eigen::MatrixXd fcm_memberships(const Eigen::MatrixXd& x, const Eigen::MatrixXd& centroids,
                                double q);

Eigen::MatrixXd fcm_centroids(const Eigen::MatrixXd& x, const Eigen::MatrixXd& u, double q);

// J = sum_i sum_k u_ik^q ||x_i - v_k||^2
double fcm_objective(const Eigen::MatrixXd& x, const Eigen::MatrixXd& u,
                     const Eigen::MatrixXd& centroids, double q);

// Centroids start from k-means++ with the same seed stream kmeans() uses.
FcmResult fuzzy_cmeans(const Eigen::MatrixXd& x, int c, std::uint64_t seed,
                       const FcmOptions& options = {});

}  // namespace hoopstyle::clustering
