#include "hoopstyle/inference/rhat.hpp"

#include <cmath>
#include <limits>

#include "hoopstyle/error.hpp"

namespace hoopstyle::inference {

double split_rhat(const Eigen::MatrixXd& draws) {
  const Eigen::Index n_full = draws.rows();
  const Eigen::Index chains = draws.cols();
  if (chains < 2) throw InvalidArgument("split R-hat needs at least 2 chains");
  if (n_full < 4) throw InvalidArgument("split R-hat needs at least 4 draws per chain");
  const Eigen::Index half = n_full / 2;
  const Eigen::Index m = 2 * chains;

  Eigen::VectorXd means(m);
  Eigen::VectorXd vars(m);
  for (Eigen::Index c = 0; c < chains; ++c) {
    for (int part = 0; part < 2; ++part) {
      const Eigen::Index start = part == 0 ? 0 : n_full - half;
      const Eigen::VectorXd seg = draws.col(c).segment(start, half);
      const double mean = seg.mean();
      means(2 * c + part) = mean;
      vars(2 * c + part) = (seg.array() - mean).square().sum() / static_cast<double>(half - 1);
    }
  }
  const double w = vars.mean();
  if (!(w > 0.0)) return std::numeric_limits<double>::infinity();
  const double grand = means.mean();
  const double n = static_cast<double>(half);
  const double b = n * (means.array() - grand).square().sum() / static_cast<double>(m - 1);
  const double var_plus = (n - 1.0) / n * w + b / n;
  return std::sqrt(var_plus / w);
}

RhatReport split_rhat(const PosteriorSamples& samples, double threshold) {
  samples.validate();
  RhatReport r;
  r.max = -std::numeric_limits<double>::infinity();
  for (int p = 0; p < samples.dim(); ++p) {
    const double v = split_rhat(samples.by_chain(p));
    r.per_parameter.push_back(v);
    if (std::isinf(v)) r.zero_variance.push_back(p);
    if (v > r.max || r.argmax < 0) {
      r.max = v;
      r.argmax = p;
    }
  }
  r.converged = r.max < threshold;
  return r;
}

double effective_sample_size(const Eigen::MatrixXd& draws) {
  const Eigen::Index n = draws.rows();
  const Eigen::Index chains = draws.cols();
  if (chains < 1 || n < 4) throw InvalidArgument("ESS needs at least 4 draws");

  Eigen::VectorXd chain_mean(chains);
  Eigen::VectorXd chain_var(chains);
  for (Eigen::Index c = 0; c < chains; ++c) {
    chain_mean(c) = draws.col(c).mean();
    chain_var(c) = (draws.col(c).array() - chain_mean(c)).square().sum() / static_cast<double>(n - 1);
  }
  const double w = chain_var.mean();
  if (!(w > 0.0)) return 1.0;
  const double nd = static_cast<double>(n);
  double var_plus = (nd - 1.0) / nd * w;
  if (chains > 1) {
    const double grand = chain_mean.mean();
    var_plus += (chain_mean.array() - grand).square().sum() / static_cast<double>(chains - 1);
  }

  // Autocovariance per chain by direct summation.
  auto autocov = [&](Eigen::Index lag) {
    double total = 0.0;
    for (Eigen::Index c = 0; c < chains; ++c) {
      double s = 0.0;
      for (Eigen::Index t = 0; t + lag < n; ++t) {
        s += (draws(t, c) - chain_mean(c)) * (draws(t + lag, c) - chain_mean(c));
      }
      total += s / nd;
    }
    return total / static_cast<double>(chains);
  };
  auto rho = [&](Eigen::Index lag) { return 1.0 - (w - autocov(lag)) / var_plus; };

  double tau = -1.0;
  double prev_pair = std::numeric_limits<double>::infinity();
  for (Eigen::Index t = 0; t + 1 < n; t += 2) {
    double pair = (t == 0 ? 1.0 : rho(t)) + rho(t + 1);
    if (pair < 0.0) break;
    pair = std::min(pair, prev_pair);
    prev_pair = pair;
    tau += 2.0 * pair;
  }
  const double total = nd * static_cast<double>(chains);
  return total / std::max(tau, 1.0 / std::log10(total));
}

}  // namespace hoopstyle::inference
