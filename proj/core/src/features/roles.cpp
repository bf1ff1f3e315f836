#include "hoopstyle/features/roles.hpp"

#include "hoopstyle/error.hpp"

namespace hoopstyle::features {

namespace {
constexpr double kSumTol = 1e-6;
constexpr auto kOffScreen = static_cast<std::size_t>(Playtype::kOffScreen);
constexpr auto kHandOff = static_cast<std::size_t>(Playtype::kHandOff);
}  // namespace

Eigen::VectorXd RoleFeatureVector::as_vector() const {
  Eigen::VectorXd v(kDim);
  for (std::size_t k = 0; k < kNumMergedPlaytypes; ++k) v(static_cast<Eigen::Index>(k)) = playtype_pct[k];
  v(kNumMergedPlaytypes) = ast_pct;
  v(kNumMergedPlaytypes + 1) = usg_pct;
  return v;
}

std::array<double, kNumRawPlaytypes> impute_playtypes(const PlaytypeProfile& profile) {
  double known = 0.0;
  std::size_t missing = 0;
  for (const auto& v : profile.playtype_pct) {
    if (v) {
      known += *v;
    } else {
      ++missing;
    }
  }
  const double residual = 100.0 - known;
  if (residual < -kSumTol) {
    throw DataError("playtype percentages of '" + profile.player_id + "' (" + profile.season +
                    ") sum to " + std::to_string(known) + " > 100");
  }
  const double share = missing ? std::max(residual, 0.0) / static_cast<double>(missing) : 0.0;
  std::array<double, kNumRawPlaytypes> out{};
  for (std::size_t k = 0; k < kNumRawPlaytypes; ++k) {
    out[k] = profile.playtype_pct[k] ? *profile.playtype_pct[k] : share;
  }
  return out;
}

std::vector<RoleFeatureRow> build_role_features(std::span<const PlaytypeProfile> profiles,
                                                const RoleFeatureOptions& options) {
  std::vector<RoleFeatureRow> rows;
  for (const auto& p : profiles) {
    std::size_t missing = 0;
    for (const auto& v : p.playtype_pct) missing += v ? 0 : 1;
    const double missing_fraction = static_cast<double>(missing) / kNumRawPlaytypes;
    if (missing_fraction > options.max_missing_fraction) continue;
    if (p.games_played < options.min_games) continue;

    const auto raw = impute_playtypes(p);
    RoleFeatureVector f;
    std::size_t out = 0;
    for (std::size_t k = 0; k < kNumRawPlaytypes; ++k) {
      if (k == kHandOff) continue;
      f.playtype_pct[out++] = k == kOffScreen ? raw[kOffScreen] + raw[kHandOff] : raw[k];
    }
    f.ast_pct = p.ast_pct;
    f.usg_pct = p.usg_pct;
    rows.emplace_back(p.player_id, f);
  }
  return rows;
}

Eigen::MatrixXd role_feature_matrix(std::span<const RoleFeatureRow> rows) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), RoleFeatureVector::kDim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    x.row(static_cast<Eigen::Index>(i)) = rows[i].second.as_vector().transpose();
  }
  return x;
}

}  // namespace hoopstyle::features
