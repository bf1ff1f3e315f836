#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace hoopstyle::clustering {

struct HardAssignment {
  std::vector<int> labels;  // each in [0, k)
  int k = 0;

  std::vector<int> cluster_sizes() const;
  // Throws InvalidArgument if a label is out of range or a cluster is empty.
  void validate() const;
};

// Soft assignment: row i holds the memberships of point i over c clusters.
struct MembershipMatrix {
  Eigen::MatrixXd u;          // n x c, rows on the probability simplex
  Eigen::MatrixXd centroids;  // c x d (may be empty after merging)

  Eigen::Index n() const { return u.rows(); }
  Eigen::Index c() const { return u.cols(); }
  // Index of the largest membership per row (lowest index on ties).
  std::vector<int> argmax() const;
  Eigen::VectorXd max_membership() const;
  // Throws InvalidArgument unless entries lie in [0, 1] and rows sum to 1
  // within `tol`.
  void validate(double tol = 1e-9) const;
};

}  // namespace hoopstyle::clustering
