#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace hoopstyle::features {

// Standardize-then-project model. `column_scales` is 1 for columns that are
// only centered.
struct PcaModel {
  Eigen::VectorXd column_means;
  Eigen::VectorXd column_scales;
  Eigen::MatrixXd loadings;                  // p x d, orthonormal columns
  Eigen::VectorXd explained_variance_ratio;  // d
  Eigen::VectorXd eigenvalues;               // all p, descending

  Eigen::Index input_dim() const { return column_means.size(); }
  Eigen::Index output_dim() const { return loadings.cols(); }
};

// Z-scores the columns flagged in `standardize` (sample sd), centers all
// columns, and keeps the smallest number of principal axes whose cumulative
// explained variance reaches `variance_target`. Each loading column is
// signed so that its largest-magnitude entry is positive.
PcaModel fit_pca(const Eigen::MatrixXd& x, const std::vector<bool>& standardize,
                 double variance_target);

// The 17-column shot-feature variant: the six coordinate columns are
// z-scored, distances/speed/time pass through with scale 1.
PcaModel fit_standardize_pca(const Eigen::MatrixXd& features, double variance_target);

Eigen::MatrixXd pca_transform(const PcaModel& model, const Eigen::MatrixXd& x);
// Maps scores back to the input space (undoes projection and scaling).
Eigen::MatrixXd pca_inverse_transform(const PcaModel& model, const Eigen::MatrixXd& scores);

std::string pca_to_json(const PcaModel& model);
PcaModel pca_from_json(std::string_view text);

}  // namespace hoopstyle::features
