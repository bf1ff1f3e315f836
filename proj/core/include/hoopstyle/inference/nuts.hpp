#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hoopstyle/error.hpp"
#include "hoopstyle/inference/log_density.hpp"

namespace hoopstyle::inference {

struct NutsOptions {
  int chains = 4;
  int warmup = 1000;
  int draws = 1000;
  std::uint64_t seed = 20240101;
  double target_accept = 0.8;
  int max_tree_depth = 10;
  int threads = 1;  // chains run concurrently up to this many
  double initial_step_size = 1.0;
};

struct ChainDiagnostics {
  double step_size = 0.0;
  Eigen::VectorXd inv_metric;
  int divergences = 0;           // post-warmup
  int max_depth_hits = 0;        // post-warmup
  double mean_accept_stat = 0.0; // post-warmup
  long long gradient_evaluations = 0;
};

struct PosteriorSamples {
  std::vector<std::string> names;
  std::vector<Eigen::MatrixXd> chains;  // each draws x dim
  std::vector<ChainDiagnostics> diagnostics;

  int n_chains() const { return static_cast<int>(chains.size()); }
  int n_draws() const { return chains.empty() ? 0 : static_cast<int>(chains.front().rows()); }
  int dim() const { return chains.empty() ? 0 : static_cast<int>(chains.front().cols()); }
  int index_of(const std::string& name) const;
  // Draws of one parameter pooled across chains, chain-major.
  Eigen::VectorXd pooled(int param) const;
  // draws x chains matrix for one parameter.
  Eigen::MatrixXd by_chain(int param) const;
  int total_divergences() const;
  double divergent_fraction() const;
  // Throws InvalidArgument on ragged chains, fewer than 2 chains or NaN draws.
  void validate() const;
};

// Multinomial NUTS with a diagonal metric. Warmup tunes the step size by
// dual averaging and the metric from windowed variance estimates. Each
// chain is seeded from (seed, chain index) so results do not depend on the
// thread count.
PosteriorSamples nuts_sample(const LogDensity& target, const NutsOptions& options);

}  // namespace hoopstyle::inference
