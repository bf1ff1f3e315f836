#pragma once

#include <vector>

#include <Eigen/Core>

namespace hoopstyle::inference {

struct RidgeModel {
  double intercept = 0.0;
  Eigen::VectorXd coef;
  double lambda = 0.0;
  double variance = 0.0;  // residual variance on the training rows

  Eigen::VectorXd predict(const Eigen::MatrixXd& x) const;
};

// Ridge regression with an unpenalized intercept.
RidgeModel fit_ridge(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda);

struct BaselineOptions {
  std::vector<double> lambda_grid{1e-8, 1e-6, 1e-4, 1e-3, 1e-2, 1e-1, 1.0, 10.0, 100.0, 1000.0};
  int inner_folds = 5;
  double variance_floor = 1e-12;
};

struct BaselineFold {
  int fold_team = 0;
  std::vector<int> rows;          // held-out row indices
  Eigen::VectorXd predictions;
  double predictive_sd = 0.0;
  double rmse = 0.0;
  double mae = 0.0;
  double nll = 0.0;  // mean Gaussian negative log likelihood per row
  double lambda = 0.0;
};

// Trains on every team except `fold_team` and scores that team. The ridge
// strength comes from inner cross-validation over groups of training teams.
BaselineFold baseline_fit_predict(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                  const std::vector<int>& team_index, int fold_team,
                                  const BaselineOptions& options = {});

struct BaselineReport {
  std::vector<BaselineFold> folds;
  Eigen::VectorXd out_of_fold;  // prediction for every row
  double rmse = 0.0;  // averaged over folds
  double mae = 0.0;
  double nll = 0.0;
};

BaselineReport leave_one_team_out(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                  const std::vector<int>& team_index,
                                  const BaselineOptions& options = {});

}  // namespace hoopstyle::inference
