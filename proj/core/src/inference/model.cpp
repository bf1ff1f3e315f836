#include "hoopstyle/inference/model.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hoopstyle/error.hpp"

namespace hoopstyle::inference {

namespace {
const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);
}

Eigen::VectorXd LogDensity::initial_point(std::mt19937_64& rng) const {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Eigen::VectorXd theta(dim());
  for (Eigen::Index i = 0; i < theta.size(); ++i) theta(i) = u(rng);
  return theta;
}

std::vector<std::string> LogDensity::parameter_names() const {
  std::vector<std::string> out;
  for (int i = 0; i < dim(); ++i) out.push_back("theta[" + std::to_string(i) + "]");
  return out;
}

double StandardNormal::log_density(const Eigen::VectorXd& theta, Eigen::VectorXd& grad) const {
  grad = -theta;
  return -0.5 * theta.squaredNorm();
}

double normal_log_pdf(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return -kHalfLog2Pi - std::log(sd) - 0.5 * z * z;
}

double half_normal_log_pdf(double x, double scale) {
  if (x < 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(2.0) + normal_log_pdf(x, 0.0, scale);
}

void HierarchicalModelSpec::validate() const {
  if (n_teams < 1 || n_features < 1) throw InvalidArgument("model needs >= 1 team and feature");
  if (!(alpha_sd > 0.0 && mu_beta_sd > 0.0 && sigma_beta_scale > 0.0 && epsilon_scale > 0.0)) {
    throw InvalidArgument("model prior scales must be positive");
  }
  if (fixed_sigma_beta && !(*fixed_sigma_beta > 0.0)) {
    throw InvalidArgument("fixed sigma_beta must be positive");
  }
  if (fixed_epsilon && !(*fixed_epsilon > 0.0)) {
    throw InvalidArgument("fixed epsilon must be positive");
  }
}

ParameterLayout::ParameterLayout(const HierarchicalModelSpec& spec)
    : n_teams(spec.n_teams), n_features(spec.n_features) {
  alpha = 0;
  beta = n_teams;
  mu_beta = beta + n_teams * n_features;
  int next = mu_beta + n_features;
  if (!spec.fixed_sigma_beta) {
    log_sigma_beta = next;
    n_sigma_beta = spec.per_feature_sigma_beta ? n_features : 1;
    next += n_sigma_beta;
  }
  if (!spec.fixed_epsilon) log_epsilon = next++;
  dim = next;
}

std::vector<std::string> ParameterLayout::names() const {
  std::vector<std::string> out;
  for (int t = 0; t < n_teams; ++t) out.push_back("alpha[" + std::to_string(t) + "]");
  for (int t = 0; t < n_teams; ++t) {
    for (int f = 0; f < n_features; ++f) {
      out.push_back("beta[" + std::to_string(t) + "," + std::to_string(f) + "]");
    }
  }
  for (int f = 0; f < n_features; ++f) out.push_back("mu_beta[" + std::to_string(f) + "]");
  if (n_sigma_beta == 1) {
    out.push_back("log_sigma_beta");
  } else {
    for (int f = 0; f < n_sigma_beta; ++f) {
      out.push_back("log_sigma_beta[" + std::to_string(f) + "]");
    }
  }
  if (log_epsilon >= 0) out.push_back("log_epsilon");
  return out;
}

double log_posterior(const HierarchicalModelSpec& spec, const Eigen::MatrixXd& x,
                     const Eigen::VectorXd& y, const std::vector<int>& team_index,
                     const Eigen::VectorXd& theta, Eigen::VectorXd* grad) {
  const ParameterLayout lay(spec);
  const int T = spec.n_teams;
  const int F = spec.n_features;
  if (theta.size() != lay.dim) throw InvalidArgument("log_posterior: parameter size mismatch");
  if (x.rows() != y.size() || team_index.size() != static_cast<std::size_t>(y.size()) ||
      (x.rows() > 0 && x.cols() != F)) {
    throw InvalidArgument("log_posterior: data shape mismatch");
  }

  Eigen::VectorXd g = Eigen::VectorXd::Zero(lay.dim);
  double lp = 0.0;

  auto sigma_slot = [&](int f) { return lay.n_sigma_beta == 1 ? 0 : f; };
  Eigen::VectorXd log_s(F);
  for (int f = 0; f < F; ++f) {
    log_s(f) = lay.log_sigma_beta >= 0 ? theta(lay.log_sigma_beta + sigma_slot(f)) : std::log(*spec.fixed_sigma_beta);
  }
  const Eigen::VectorXd s = log_s.array().exp();
  Eigen::MatrixXd beta(T, F);
  for (int t = 0; t < T; ++t) {
    for (int f = 0; f < F; ++f) {
      const double raw = theta(lay.beta_index(t, f));
      beta(t, f) = spec.non_centered ? theta(lay.mu_beta + f) + s(f) * raw : raw;
    }
  }

  const double log_eps = lay.log_epsilon >= 0 ? theta(lay.log_epsilon) : std::log(*spec.fixed_epsilon);
  const double eps = std::exp(log_eps);
  const double inv_eps2 = 1.0 / (eps * eps);

  Eigen::MatrixXd g_beta = Eigen::MatrixXd::Zero(T, F);
  double sum_r2 = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const int t = team_index[static_cast<std::size_t>(i)];
    if (t < 0 || t >= T) throw InvalidArgument("log_posterior: team index out of range");
    const double mu = theta(lay.alpha + t) + x.row(i).dot(beta.row(t));
    const double r = y(i) - mu;
    sum_r2 += r * r;
    const double w = r * inv_eps2;
    g(lay.alpha + t) += w;
    g_beta.row(t) += w * x.row(i);
  }
  const auto n = static_cast<double>(y.size());
  lp += -n * kHalfLog2Pi - n * log_eps - 0.5 * sum_r2 * inv_eps2;
  if (lay.log_epsilon >= 0) {
    g(lay.log_epsilon) += -n + sum_r2 * inv_eps2;
    lp += half_normal_log_pdf(eps, spec.epsilon_scale) + log_eps;
    g(lay.log_epsilon) += -eps * eps / (spec.epsilon_scale * spec.epsilon_scale) + 1.0;
  }

  for (int t = 0; t < T; ++t) {
    const double a = theta(lay.alpha + t);
    lp += normal_log_pdf(a, spec.mu_alpha, spec.alpha_sd);
    g(lay.alpha + t) -= (a - spec.mu_alpha) / (spec.alpha_sd * spec.alpha_sd);
  }

  for (int f = 0; f < F; ++f) {
    const double inv_s2 = 1.0 / (s(f) * s(f));
    const double mb = theta(lay.mu_beta + f);
    for (int t = 0; t < T; ++t) {
      const int bi = lay.beta_index(t, f);
      if (spec.non_centered) {
        const double z = theta(bi);
        lp += -kHalfLog2Pi - 0.5 * z * z;
        g(bi) += s(f) * g_beta(t, f) - z;
        g(lay.mu_beta + f) += g_beta(t, f);
        if (lay.log_sigma_beta >= 0) g(lay.log_sigma_beta + sigma_slot(f)) += s(f) * z * g_beta(t, f);
      } else {
        const double d = theta(bi) - mb;
        lp += -kHalfLog2Pi - log_s(f) - 0.5 * d * d * inv_s2;
        g(bi) += g_beta(t, f) - d * inv_s2;
        g(lay.mu_beta + f) += d * inv_s2;
        if (lay.log_sigma_beta >= 0) g(lay.log_sigma_beta + sigma_slot(f)) += -1.0 + d * d * inv_s2;
      }
    }
    lp += normal_log_pdf(mb, 0.0, spec.mu_beta_sd);
    g(lay.mu_beta + f) -= mb / (spec.mu_beta_sd * spec.mu_beta_sd);
  }
  for (int k = 0; k < lay.n_sigma_beta; ++k) {
    const double ls = theta(lay.log_sigma_beta + k);
    const double sk = std::exp(ls);
    lp += half_normal_log_pdf(sk, spec.sigma_beta_scale) + ls;
    g(lay.log_sigma_beta + k) += -sk * sk / (spec.sigma_beta_scale * spec.sigma_beta_scale) + 1.0;
  }

  if (!std::isfinite(lp) || !g.allFinite()) {
    if (grad) grad->setZero(lay.dim);
    return -std::numeric_limits<double>::infinity();
  }
  if (grad) *grad = std::move(g);
  return lp;
}

Eigen::VectorXd centered_point(const HierarchicalModelSpec& spec, const Eigen::VectorXd& theta) {
  const ParameterLayout lay(spec);
  if (theta.size() != lay.dim) throw InvalidArgument("centered_point: parameter size mismatch");
  Eigen::VectorXd out = theta;
  if (!spec.non_centered) return out;
  for (int f = 0; f < lay.n_features; ++f) {
    const double sd = lay.log_sigma_beta >= 0
                          ? std::exp(theta(lay.log_sigma_beta + (lay.n_sigma_beta == 1 ? 0 : f)))
                          : *spec.fixed_sigma_beta;
    for (int t = 0; t < lay.n_teams; ++t) {
      const int bi = lay.beta_index(t, f);
      out(bi) = theta(lay.mu_beta + f) + sd * theta(bi);
    }
  }
  return out;
}

HierarchicalModel::HierarchicalModel(HierarchicalModelSpec spec, Eigen::MatrixXd x,
                                     Eigen::VectorXd y, std::vector<int> team_index)
    : spec_(std::move(spec)),
      layout_((spec_.validate(), spec_)),
      x_(std::move(x)),
      y_(std::move(y)),
      team_(std::move(team_index)) {
  if (x_.rows() != y_.size() || team_.size() != static_cast<std::size_t>(y_.size()) ||
      (x_.rows() > 0 && x_.cols() != spec_.n_features)) {
    throw InvalidArgument("hierarchical model: data shape mismatch");
  }
  for (int t : team_) {
    if (t < 0 || t >= spec_.n_teams) throw InvalidArgument("hierarchical model: bad team index");
  }
  if (!x_.allFinite() || !y_.allFinite()) throw InvalidArgument("hierarchical model: non-finite data");
}

double HierarchicalModel::log_density(const Eigen::VectorXd& theta, Eigen::VectorXd& grad) const {
  return log_posterior(spec_, x_, y_, team_, theta, &grad);
}

Eigen::VectorXd HierarchicalModel::reported(const Eigen::VectorXd& theta) const {
  return centered_point(spec_, theta);
}

Eigen::VectorXd HierarchicalModel::initial_point(std::mt19937_64& rng) const {
  Eigen::VectorXd theta = LogDensity::initial_point(rng);
  for (int t = 0; t < layout_.n_teams; ++t) theta(layout_.alpha + t) += spec_.mu_alpha;
  return theta;
}

}  // namespace hoopstyle::inference
