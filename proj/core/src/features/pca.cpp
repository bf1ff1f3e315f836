#include "hoopstyle/features/pca.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "hoopstyle/error.hpp"
#include "hoopstyle/features/shot_features.hpp"
#include "json.hpp"

namespace hoopstyle::features {

PcaModel fit_pca(const Eigen::MatrixXd& x, const std::vector<bool>& standardize,
                 double variance_target) {
  const Eigen::Index n = x.rows();
  const Eigen::Index p = x.cols();
  if (static_cast<Eigen::Index>(standardize.size()) != p) {
    throw InvalidArgument("fit_pca: standardize mask has wrong length");
  }
  if (n < p + 1) {
    throw InvalidArgument("fit_pca: need at least " + std::to_string(p + 1) + " rows, got " +
                          std::to_string(n));
  }
  if (!(variance_target > 0.0 && variance_target <= 1.0)) {
    throw InvalidArgument("fit_pca: variance_target must be in (0, 1]");
  }
  if (!x.allFinite()) throw InvalidArgument("fit_pca: non-finite input");

  PcaModel model;
  model.column_means = x.colwise().mean().transpose();
  model.column_scales = Eigen::VectorXd::Ones(p);
  Eigen::MatrixXd centered = x.rowwise() - model.column_means.transpose();
  for (Eigen::Index j = 0; j < p; ++j) {
    if (!standardize[static_cast<std::size_t>(j)]) continue;
    const double sd = std::sqrt(centered.col(j).squaredNorm() / static_cast<double>(n - 1));
    if (!(sd > 0.0)) {
      throw InvalidArgument("fit_pca: column " + std::to_string(j) +
                            " has zero variance and cannot be standardized");
    }
    model.column_scales(j) = sd;
    centered.col(j) /= sd;
  }

  const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success) throw SolverError("fit_pca: eigendecomposition failed");

  // Eigen returns ascending order.
  Eigen::VectorXd values = eig.eigenvalues().reverse().cwiseMax(0.0);
  Eigen::MatrixXd vectors = eig.eigenvectors().rowwise().reverse();
  const double total = values.sum();
  if (!(total > 0.0)) throw InvalidArgument("fit_pca: data has zero total variance");

  Eigen::Index d = p;
  double cumulative = 0.0;
  for (Eigen::Index k = 0; k < p; ++k) {
    cumulative += values(k);
    if (cumulative >= variance_target * total - 1e-12 * total) {
      d = k + 1;
      break;
    }
  }

  for (Eigen::Index k = 0; k < p; ++k) {
    Eigen::Index arg = 0;
    vectors.col(k).cwiseAbs().maxCoeff(&arg);
    if (vectors(arg, k) < 0.0) vectors.col(k) *= -1.0;
  }

  model.eigenvalues = values;
  model.loadings = vectors.leftCols(d);
  model.explained_variance_ratio = values.head(d) / total;
  return model;
}

PcaModel fit_standardize_pca(const Eigen::MatrixXd& features, double variance_target) {
  if (features.cols() != static_cast<Eigen::Index>(kNumShotFeatures)) {
    throw InvalidArgument("fit_standardize_pca: expected 17 columns");
  }
  std::vector<bool> mask(kNumShotFeatures, false);
  for (std::size_t j = 0; j < kNumCoordinateFeatures; ++j) mask[j] = true;
  return fit_pca(features, mask, variance_target);
}

Eigen::MatrixXd pca_transform(const PcaModel& model, const Eigen::MatrixXd& x) {
  if (x.cols() != model.input_dim()) {
    throw InvalidArgument("pca_transform: expected " + std::to_string(model.input_dim()) +
                          " columns, got " + std::to_string(x.cols()));
  }
  const Eigen::MatrixXd z =
      (x.rowwise() - model.column_means.transpose()).array().rowwise() /
      model.column_scales.transpose().array();
  return z * model.loadings;
}

Eigen::MatrixXd pca_inverse_transform(const PcaModel& model, const Eigen::MatrixXd& scores) {
  if (scores.cols() != model.output_dim()) {
    throw InvalidArgument("pca_inverse_transform: column-count mismatch");
  }
  const Eigen::MatrixXd z = scores * model.loadings.transpose();
  return (z.array().rowwise() * model.column_scales.transpose().array()).matrix().rowwise() +
         model.column_means.transpose();
}

namespace {

nlohmann::json to_json(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

Eigen::VectorXd vector_from(const nlohmann::json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

}  // namespace

std::string pca_to_json(const PcaModel& model) {
  nlohmann::json j;
  j["column_means"] = to_json(model.column_means);
  j["column_scales"] = to_json(model.column_scales);
  j["eigenvalues"] = to_json(model.eigenvalues);
  j["explained_variance_ratio"] = to_json(model.explained_variance_ratio);
  nlohmann::json loadings = nlohmann::json::array();
  for (Eigen::Index k = 0; k < model.loadings.cols(); ++k) {
    loadings.push_back(to_json(model.loadings.col(k)));
  }
  j["loadings"] = loadings;  // one array per component
  return j.dump(2);
}

PcaModel pca_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    PcaModel model;
    model.column_means = vector_from(j.at("column_means"));
    model.column_scales = vector_from(j.at("column_scales"));
    model.eigenvalues = vector_from(j.at("eigenvalues"));
    model.explained_variance_ratio = vector_from(j.at("explained_variance_ratio"));
    const auto& cols = j.at("loadings");
    model.loadings.resize(model.column_means.size(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const Eigen::VectorXd col = vector_from(cols[k]);
      if (col.size() != model.column_means.size()) throw ParseError("pca_model", "bad loading length");
      model.loadings.col(static_cast<Eigen::Index>(k)) = col;
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("pca_model", e.what());
  }
}

}  // namespace hoopstyle::features
