#pragma once

#include <cstddef>

#include <Eigen/Core>

namespace hoopstyle::transport {

// Discrete distribution over m support points in R^d (one point per row).
struct EmpiricalDistribution {
  Eigen::MatrixXd points;  // m x d
  Eigen::VectorXd mass;    // m, non-negative, sums to 1
  // True when built by `uniform`; lets the solver work on an exact integer
  // grid instead of floating masses.
  bool uniform_mass = false;

  static EmpiricalDistribution uniform(Eigen::MatrixXd points);
  static EmpiricalDistribution weighted(Eigen::MatrixXd points, Eigen::VectorXd mass);

  Eigen::Index size() const { return points.rows(); }
  Eigen::Index dim() const { return points.cols(); }
  // Throws InvalidArgument on an empty support, non-finite points, negative
  // mass or a total away from 1 by more than 1e-12.
  void validate() const;
};

struct TransportPlan {
  Eigen::MatrixXd plan;  // m x n, rows sum to mu.mass, columns to nu.mass
  double cost = 0.0;     // sum D_ij P_ij (before the 1/p root)
  std::size_t pivots = 0;
  double min_reduced_cost = 0.0;
};

// Entry (i, j) is ||a_i - b_j||_2^p.
Eigen::MatrixXd ground_cost(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double p);

TransportPlan solve_emd(const EmpiricalDistribution& mu, const EmpiricalDistribution& nu,
                        double p = 1.0);

// (min sum D_ij P_ij)^(1/p); p = 1 is the Earth Mover's Distance.
double wasserstein_distance(const EmpiricalDistribution& mu, const EmpiricalDistribution& nu,
                            double p = 1.0);

}  // namespace hoopstyle::transport
