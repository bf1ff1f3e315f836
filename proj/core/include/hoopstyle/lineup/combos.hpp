#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace hoopstyle::lineup {

inline constexpr int kLineupSize = 5;
inline constexpr int kPairsPerLineup = 10;

// C(c + 1, 2): unordered cluster pairs with repetition.
int n_combination_features(int c);

// Column of pair (k, k2), k <= k2, in lexicographic order.
int pair_index(int k, int k2, int c);
std::pair<int, int> pair_from_index(int index, int c);

std::vector<std::string> combo_feature_names(int c);  // combo_<k>_<k'>
std::vector<std::string> count_feature_names(int c);  // count_<k>

// Number of players per cluster. Labels must lie in [0, c).
Eigen::VectorXd count_features_5(std::span<const int> labels, int c);

// Column sums of a 5 x c membership block.
Eigen::VectorXd count_features_5(const Eigen::MatrixXd& memberships);

// Soft pair counts over the 10 player pairs of a lineup. Rows of
// `memberships` must each sum to 1.
Eigen::VectorXd combo_features_2(const Eigen::MatrixXd& memberships);

// Crisp version: indicator rows built from labels.
Eigen::VectorXd combo_features_2(std::span<const int> labels, int c);

}  // namespace hoopstyle::lineup
