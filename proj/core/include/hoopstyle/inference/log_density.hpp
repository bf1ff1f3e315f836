#pragma once

#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace hoopstyle::inference {

// Target for gradient-based samplers, on an unconstrained space.
class LogDensity {
 public:
  virtual ~LogDensity() = default;
  virtual int dim() const = 0;
  // Returns log p(theta) up to a constant and fills `grad`. May return a
  // non-finite value, which samplers treat as a divergence.
  virtual double log_density(const Eigen::VectorXd& theta, Eigen::VectorXd& grad) const = 0;
  // Default: uniform on [-2, 2] per coordinate.
  virtual Eigen::VectorXd initial_point(std::mt19937_64& rng) const;
  virtual std::vector<std::string> parameter_names() const;
  // Maps a sampled point to the values stored as a draw. Default: identity.
  virtual Eigen::VectorXd reported(const Eigen::VectorXd& theta) const { return theta; }
};

// Independent standard normals in `dim` dimensions.
class StandardNormal final : public LogDensity {
 public:
  explicit StandardNormal(int dim) : dim_(dim) {}
  int dim() const override { return dim_; }
  double log_density(const Eigen::VectorXd& theta, Eigen::VectorXd& grad) const override;

 private:
  int dim_;
};

}  // namespace hoopstyle::inference
