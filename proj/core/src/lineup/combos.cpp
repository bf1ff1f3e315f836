#include "hoopstyle/lineup/combos.hpp"

#include <cmath>

#include "hoopstyle/error.hpp"

namespace hoopstyle::lineup {

int n_combination_features(int c) {
  if (c < 1) throw InvalidArgument("n_combination_features: c must be >= 1");
  return c * (c + 1) / 2;
}

int pair_index(int k, int k2, int c) {
  if (k > k2) std::swap(k, k2);
  if (k < 0 || k2 >= c) throw InvalidArgument("pair_index: cluster out of range");
  // rows 0..k-1 hold c, c-1, ..., c-k+1 pairs
  return k * c - k * (k - 1) / 2 + (k2 - k);
}

std::pair<int, int> pair_from_index(int index, int c) {
  if (index < 0 || index >= n_combination_features(c)) {
    throw InvalidArgument("pair_from_index: index out of range");
  }
  int k = 0;
  while (index >= c - k) {
    index -= c - k;
    ++k;
  }
  return {k, k + index};
}

std::vector<std::string> combo_feature_names(int c) {
  std::vector<std::string> out;
  for (int k = 0; k < c; ++k) {
    for (int k2 = k; k2 < c; ++k2) {
      out.push_back("combo_" + std::to_string(k) + "_" + std::to_string(k2));
    }
  }
  return out;
}

std::vector<std::string> count_feature_names(int c) {
  std::vector<std::string> out;
  for (int k = 0; k < c; ++k) out.push_back("count_" + std::to_string(k));
  return out;
}

Eigen::VectorXd count_features_5(std::span<const int> labels, int c) {
  if (labels.size() != kLineupSize) throw InvalidArgument("lineup needs exactly 5 labels");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(c);
  for (int l : labels) {
    if (l < 0 || l >= c) throw InvalidArgument("label out of range: " + std::to_string(l));
    out(l) += 1.0;
  }
  return out;
}

namespace {

void check_rows(const Eigen::MatrixXd& m) {
  if (m.rows() != kLineupSize) throw InvalidArgument("lineup needs exactly 5 membership rows");
  if (m.cols() < 1) throw InvalidArgument("membership rows are empty");
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if ((m.row(i).array() < 0.0).any() || !m.row(i).allFinite()) {
      throw InvalidArgument("membership row " + std::to_string(i) + " has invalid entries");
    }
    if (std::abs(m.row(i).sum() - 1.0) > 1e-9) {
      throw InvalidArgument("membership row " + std::to_string(i) + " does not sum to 1");
    }
  }
}

}  // namespace

Eigen::VectorXd count_features_5(const Eigen::MatrixXd& memberships) {
  check_rows(memberships);
  return memberships.colwise().sum().transpose();
}

Eigen::VectorXd combo_features_2(const Eigen::MatrixXd& memberships) {
  check_rows(memberships);
  const int c = static_cast<int>(memberships.cols());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n_combination_features(c));
  for (int a = 0; a < kLineupSize; ++a) {
    for (int b = a + 1; b < kLineupSize; ++b) {
      const Eigen::MatrixXd m = memberships.row(a).transpose() * memberships.row(b);
      for (int k = 0; k < c; ++k) {
        out(pair_index(k, k, c)) += m(k, k);
        for (int k2 = k + 1; k2 < c; ++k2) out(pair_index(k, k2, c)) += m(k, k2) + m(k2, k);
      }
    }
  }
  return out;
}

Eigen::VectorXd combo_features_2(std::span<const int> labels, int c) {
  if (labels.size() != kLineupSize) throw InvalidArgument("lineup needs exactly 5 labels");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(kLineupSize, c);
  for (int i = 0; i < kLineupSize; ++i) {
    const int l = labels[static_cast<std::size_t>(i)];
    if (l < 0 || l >= c) throw InvalidArgument("label out of range: " + std::to_string(l));
    m(i, l) = 1.0;
  }
  return combo_features_2(m);
}

}  // namespace hoopstyle::lineup
