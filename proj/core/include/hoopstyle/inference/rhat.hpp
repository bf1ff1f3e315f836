#pragma once

#include <vector>

#include <Eigen/Core>

#include "hoopstyle/inference/nuts.hpp"

namespace hoopstyle::inference {

// Split R-hat for one parameter given a draws x chains matrix. Each chain
// is cut into two halves (the middle draw is dropped for odd lengths).
// Returns +inf when the within-chain variance is zero.
double split_rhat(const Eigen::MatrixXd& draws_by_chain);

struct RhatReport {
  std::vector<double> per_parameter;
  double max = 0.0;
  int argmax = -1;
  bool converged = false;  // max < threshold
  std::vector<int> zero_variance;  // parameters reported as +inf
};

RhatReport split_rhat(const PosteriorSamples& samples, double threshold = 1.1);

// Effective sample size across chains (Geyer initial monotone sequence on
// the combined autocorrelation estimate).
double effective_sample_size(const Eigen::MatrixXd& draws_by_chain);

}  // namespace hoopstyle::inference
