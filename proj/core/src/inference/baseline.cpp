#include "hoopstyle/inference/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include <Eigen/Cholesky>

#include "hoopstyle/error.hpp"

namespace hoopstyle::inference {

Eigen::VectorXd RidgeModel::predict(const Eigen::MatrixXd& x) const {
  return (x * coef).array() + intercept;
}

RidgeModel fit_ridge(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda) {
  if (x.rows() != y.size() || x.rows() < 1) throw InvalidArgument("ridge: shape mismatch");
  if (!(lambda >= 0.0)) throw InvalidArgument("ridge: lambda must be non-negative");
  const Eigen::RowVectorXd x_mean = x.colwise().mean();
  const double y_mean = y.mean();
  const Eigen::MatrixXd xc = x.rowwise() - x_mean;
  const Eigen::VectorXd yc = y.array() - y_mean;

  Eigen::MatrixXd gram = xc.transpose() * xc;
  gram.diagonal().array() += lambda;
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      (gram.rows() > 0 && ldlt.vectorD().minCoeff() <= 1e-14 * std::max(1.0, ldlt.vectorD().maxCoeff()))) {
    throw SolverError("ridge: design is singular after regularization");
  }
  RidgeModel m;
  m.lambda = lambda;
  m.coef = ldlt.solve(xc.transpose() * yc);
  m.intercept = y_mean - x_mean.dot(m.coef);
  const Eigen::VectorXd r = y - m.predict(x);
  m.variance = r.squaredNorm() / static_cast<double>(y.size());
  return m;
}

namespace {

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& x, const std::vector<int>& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = x.row(rows[i]);
  return out;
}

Eigen::VectorXd take(const Eigen::VectorXd& y, const std::vector<int>& rows) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) out(static_cast<Eigen::Index>(i)) = y(rows[i]);
  return out;
}

double choose_lambda(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                     const std::vector<int>& team, const BaselineOptions& options) {
  const std::set<int> teams_set(team.begin(), team.end());
  const std::vector<int> teams(teams_set.begin(), teams_set.end());
  const int folds = std::min<int>(options.inner_folds, static_cast<int>(teams.size()));
  if (folds < 2) return options.lambda_grid.front();

  double best_lambda = options.lambda_grid.front();
  double best_mse = std::numeric_limits<double>::infinity();
  for (double lambda : options.lambda_grid) {
    double sse = 0.0;
    bool ok = true;
    for (int f = 0; f < folds && ok; ++f) {
      std::vector<int> train;
      std::vector<int> test;
      for (std::size_t i = 0; i < team.size(); ++i) {
        const auto pos = std::lower_bound(teams.begin(), teams.end(), team[i]) - teams.begin();
        (pos % folds == f ? test : train).push_back(static_cast<int>(i));
      }
      try {
        const RidgeModel m = fit_ridge(take_rows(x, train), take(y, train), lambda);
        sse += (take(y, test) - m.predict(take_rows(x, test))).squaredNorm();
      } catch (const SolverError&) {
        ok = false;
      }
    }
    if (ok && sse < best_mse) {
      best_mse = sse;
      best_lambda = lambda;
    }
  }
  return best_lambda;
}

}  // namespace

BaselineFold baseline_fit_predict(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                  const std::vector<int>& team_index, int fold_team,
                                  const BaselineOptions& options) {
  if (x.rows() != y.size() || team_index.size() != static_cast<std::size_t>(y.size())) {
    throw InvalidArgument("baseline: shape mismatch");
  }
  if (options.lambda_grid.empty()) throw InvalidArgument("baseline: empty lambda grid");
  BaselineFold fold;
  fold.fold_team = fold_team;
  std::vector<int> train;
  std::vector<int> train_team;
  for (std::size_t i = 0; i < team_index.size(); ++i) {
    if (team_index[i] == fold_team) {
      fold.rows.push_back(static_cast<int>(i));
    } else {
      train.push_back(static_cast<int>(i));
      train_team.push_back(team_index[i]);
    }
  }
  if (fold.rows.empty()) throw InvalidArgument("baseline: fold team has no rows");
  if (train.empty()) throw InvalidArgument("baseline: no training rows");

  const Eigen::MatrixXd xt = take_rows(x, train);
  const Eigen::VectorXd yt = take(y, train);
  fold.lambda = choose_lambda(xt, yt, train_team, options);
  const RidgeModel m = fit_ridge(xt, yt, fold.lambda);

  const Eigen::VectorXd yv = take(y, fold.rows);
  fold.predictions = m.predict(take_rows(x, fold.rows));
  const double var = std::max(m.variance, options.variance_floor);
  fold.predictive_sd = std::sqrt(var);
  const Eigen::ArrayXd r = (yv - fold.predictions).array();
  const double n = static_cast<double>(r.size());
  fold.rmse = std::sqrt(r.square().sum() / n);
  fold.mae = r.abs().sum() / n;
  fold.nll = 0.5 * std::log(2.0 * std::numbers::pi * var) + r.square().sum() / (2.0 * var * n);
  return fold;
}

BaselineReport leave_one_team_out(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                                  const std::vector<int>& team_index,
                                  const BaselineOptions& options) {
  const std::set<int> teams(team_index.begin(), team_index.end());
  if (teams.size() < 2) throw InvalidArgument("leave-one-team-out needs at least 2 teams");
  BaselineReport report;
  report.out_of_fold = Eigen::VectorXd::Zero(y.size());
  for (int t : teams) {
    BaselineFold fold = baseline_fit_predict(x, y, team_index, t, options);
    for (std::size_t i = 0; i < fold.rows.size(); ++i) {
      report.out_of_fold(fold.rows[i]) = fold.predictions(static_cast<Eigen::Index>(i));
    }
    report.rmse += fold.rmse;
    report.mae += fold.mae;
    report.nll += fold.nll;
    report.folds.push_back(std::move(fold));
  }
  const double k = static_cast<double>(report.folds.size());
  report.rmse /= k;
  report.mae /= k;
  report.nll /= k;
  return report;
}

}  // namespace hoopstyle::inference
