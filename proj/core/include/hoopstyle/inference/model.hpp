#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hoopstyle/inference/log_density.hpp"

namespace hoopstyle::inference {

// y_i ~ N(alpha_t + x_i . beta_t, eps^2)
// alpha_t ~ N(mu_alpha, alpha_sd^2), beta_t ~ N(mu_beta, sigma_beta^2)
// mu_beta ~ N(0, mu_beta_sd^2), sigma_beta, eps ~ Half-Normal(scale)
struct HierarchicalModelSpec {
  int n_teams = 1;
  int n_features = 1;
  double mu_alpha = 105.0;
  double alpha_sd = 10.0;
  double mu_beta_sd = 10.0;
  double sigma_beta_scale = 10.0;
  double epsilon_scale = 10.0;
  bool per_feature_sigma_beta = false;
  // Sample z with beta = mu_beta + sigma_beta * z; draws still report beta.
  bool non_centered = true;
  // Held constant instead of sampled when set.
  std::optional<double> fixed_sigma_beta;
  std::optional<double> fixed_epsilon;

  void validate() const;
};

// Offsets of each block in the unconstrained parameter vector:
// [alpha(T), beta(T x F, row-major), mu_beta(F), log_sigma_beta(1 or F), log_epsilon]
struct ParameterLayout {
  int n_teams = 0;
  int n_features = 0;
  int alpha = 0;
  int beta = 0;
  int mu_beta = 0;
  int log_sigma_beta = -1;  // -1 when fixed
  int n_sigma_beta = 0;
  int log_epsilon = -1;     // -1 when fixed
  int dim = 0;

  explicit ParameterLayout(const HierarchicalModelSpec& spec);
  int beta_index(int team, int feature) const { return beta + team * n_features + feature; }
  std::vector<std::string> names() const;
};

class HierarchicalModel final : public LogDensity {
 public:
  HierarchicalModel(HierarchicalModelSpec spec, Eigen::MatrixXd x, Eigen::VectorXd y,
                    std::vector<int> team_index);

  int dim() const override { return layout_.dim; }
  double log_density(const Eigen::VectorXd& theta, Eigen::VectorXd& grad) const override;
  // alpha near mu_alpha, everything else uniform on [-2, 2].
  Eigen::VectorXd initial_point(std::mt19937_64& rng) const override;
  std::vector<std::string> parameter_names() const override { return layout_.names(); }
  Eigen::VectorXd reported(const Eigen::VectorXd& theta) const override;

  const HierarchicalModelSpec& spec() const { return spec_; }
  const ParameterLayout& layout() const { return layout_; }

 private:
  HierarchicalModelSpec spec_;
  ParameterLayout layout_;
  Eigen::MatrixXd x_;
  Eigen::VectorXd y_;
  std::vector<int> team_;
};

// Log posterior (with log-Jacobian terms for the log-scale parameters) and
// its gradient. Returns -inf for non-finite evaluations.
double log_posterior(const HierarchicalModelSpec& spec, const Eigen::MatrixXd& x,
                     const Eigen::VectorXd& y, const std::vector<int>& team_index,
                     const Eigen::VectorXd& theta, Eigen::VectorXd* grad);

// Replaces the z block of a non-centered point with beta; identity when centered.
Eigen::VectorXd centered_point(const HierarchicalModelSpec& spec, const Eigen::VectorXd& theta);

double normal_log_pdf(double x, double mean, double sd);
double half_normal_log_pdf(double x, double scale);

}  // namespace hoopstyle::inference
