#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hoopstyle/core/types.hpp"

namespace hoopstyle::features {

struct RoleFeatureVector {
  std::array<double, kNumMergedPlaytypes> playtype_pct{};  // sums to 100
  double ast_pct = 0.0;
  double usg_pct = 0.0;

  static constexpr std::size_t kDim = kNumMergedPlaytypes + 2;
  Eigen::VectorXd as_vector() const;
};

struct RoleFeatureOptions {
  int min_games = 20;
  // Players with strictly more than this fraction of playtypes missing are
  // dropped.
  double max_missing_fraction = 0.5;
};

using RoleFeatureRow = std::pair<std::string, RoleFeatureVector>;

// Imputes each kept profile by splitting the residual 100 - sum(known)
// equally among its missing playtypes, then sums Off-screen and Hand-off.
// Throws DataError when the known percentages of a kept profile exceed 100.
std::vector<RoleFeatureRow> build_role_features(std::span<const PlaytypeProfile> profiles,
                                                const RoleFeatureOptions& options = {});

// Imputation alone (before the merge); exposed for tests.
std::array<double, kNumRawPlaytypes> impute_playtypes(const PlaytypeProfile& profile);

Eigen::MatrixXd role_feature_matrix(std::span<const RoleFeatureRow> rows);

}  // namespace hoopstyle::features
