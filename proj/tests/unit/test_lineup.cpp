#include <algorithm>
#include <array>
#include <functional>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "hoopstyle/error.hpp"
#include "hoopstyle/lineup/combos.hpp"
#include "hoopstyle/lineup/design.hpp"
#include "hoopstyle/lineup/merge.hpp"
#include "hoopstyle/lineup/stats.hpp"

namespace hs = hoopstyle;
namespace hl = hoopstyle::lineup;
namespace hc = hoopstyle::clustering;

namespace {

// Counts each unordered player pair's cluster pair directly.
Eigen::VectorXd brute_force_pairs(const std::array<int, 5>& labels, int c) {
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(c, c);
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      const int a = std::min(labels[static_cast<std::size_t>(i)], labels[static_cast<std::size_t>(j)]);
      const int b = std::max(labels[static_cast<std::size_t>(i)], labels[static_cast<std::size_t>(j)]);
      counts(a, b) += 1.0;
    }
  }
  Eigen::VectorXd out(c * (c + 1) / 2);
  int col = 0;
  for (int a = 0; a < c; ++a) {
    for (int b = a; b < c; ++b) out(col++) = counts(a, b);
  }
  return out;
}

hs::LineupRecord lineup(std::string team, std::vector<std::string> ids, double minutes, double offrtg,
                        double team_offrtg = 105.0) {
  return {std::move(team), "2023-24", std::move(ids), minutes, offrtg, team_offrtg};
}

}  // namespace

TEST(Merge, IdentityLeavesLabelsAlone) {
  const auto m = hl::identity_merge_map(4);
  const hc::HardAssignment a{{3, 1, 0, 2, 1}, 4};
  EXPECT_EQ(hl::merge_clusters(a, m).labels, a.labels);
}

TEST(Merge, DefaultMapSendsPickAndRollHandlersToBallHandler) {
  const auto m = hl::default_shot_merge_map();
  ASSERT_EQ(m.n_source(), 13);
  ASSERT_EQ(m.n_target(), 5);
  const auto ph = std::find(m.source_names.begin(), m.source_names.end(), "PH") - m.source_names.begin();
  const hc::HardAssignment a{{static_cast<int>(ph)}, 13};
  const auto merged = hl::merge_clusters(a, m);
  EXPECT_EQ(m.target_names[static_cast<std::size_t>(merged.labels[0])], "Ball-handler");
}

TEST(Merge, SoftRowsStillSumToOne) {
  gen::Rng rng(1);
  hc::MembershipMatrix u;
  u.u = gen::simplex_rows(rng, 50, 13);
  const auto merged = hl::merge_clusters(u, hl::default_shot_merge_map());
  EXPECT_EQ(merged.c(), 5);
  merged.validate(1e-12);
}

TEST(Merge, JsonRoundTripAndValidation) {
  const auto m = hl::default_shot_merge_map();
  const auto back = hl::merge_map_from_json(hl::merge_map_to_json(m));
  EXPECT_EQ(back.target_of, m.target_of);
  EXPECT_EQ(back.target_names, m.target_names);
  hl::MergeMap broken = m;
  broken.target_of[0] = 7;
  EXPECT_THROW(broken.validate(), hs::InvalidArgument);
}

TEST(Counts, Examples) {
  const std::array<int, 5> all0{0, 0, 0, 0, 0};
  EXPECT_EQ(hl::count_features_5(all0, 3), Eigen::Vector3d(5, 0, 0));
  const std::array<int, 5> mix{0, 0, 1, 2, 2};
  EXPECT_EQ(hl::count_features_5(mix, 3), Eigen::Vector3d(2, 1, 2));
  gen::Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    EXPECT_NEAR(hl::count_features_5(gen::simplex_rows(rng, 5, 4)).sum(), 5.0, 1e-12);
  }
}

TEST(Combos, FeatureCounts) {
  EXPECT_EQ(hl::n_combination_features(1), 1);
  EXPECT_EQ(hl::n_combination_features(5), 15);
  EXPECT_EQ(hl::n_combination_features(10), 55);
  EXPECT_EQ(hl::n_combination_features(13), 91);
}

TEST(Combos, PairIndexIsABijection) {
  for (int c = 1; c <= 12; ++c) {
    int expect = 0;
    for (int a = 0; a < c; ++a) {
      for (int b = a; b < c; ++b) {
        EXPECT_EQ(hl::pair_index(a, b, c), expect);
        EXPECT_EQ(hl::pair_from_index(expect, c), std::make_pair(a, b));
        ++expect;
      }
    }
  }
  EXPECT_EQ(hl::combo_feature_names(3)[1], "combo_0_1");
}

TEST(Combos, CrispExamples) {
  const std::array<int, 5> same{2, 2, 2, 2, 2};
  const Eigen::VectorXd x = hl::combo_features_2(same, 4);
  EXPECT_EQ(x(hl::pair_index(2, 2, 4)), 10.0);
  EXPECT_EQ(x.sum(), 10.0);
  const std::array<int, 5> split{1, 3, 1, 3, 1};
  const Eigen::VectorXd y = hl::combo_features_2(split, 4);
  EXPECT_EQ(y(hl::pair_index(1, 1, 4)), 3.0);
  EXPECT_EQ(y(hl::pair_index(3, 3, 4)), 1.0);
  EXPECT_EQ(y(hl::pair_index(1, 3, 4)), 6.0);
}

TEST(Combos, UniformSoftMemberships) {
  const Eigen::MatrixXd u = Eigen::MatrixXd::Constant(5, 2, 0.5);
  const Eigen::VectorXd x = hl::combo_features_2(u);
  EXPECT_NEAR(x(0), 2.5, 1e-15);
  EXPECT_NEAR(x(1), 5.0, 1e-15);
  EXPECT_NEAR(x(2), 2.5, 1e-15);
}

TEST(Combos, CrispMatchesBruteForceForEveryMultiset) {
  for (int c = 1; c <= 4; ++c) {
    std::array<int, 5> l{};
    std::function<void(int, int)> rec = [&](int pos, int lo) {
      if (pos == 5) {
        EXPECT_EQ(hl::combo_features_2(l, c), brute_force_pairs(l, c));
        Eigen::MatrixXd ind = Eigen::MatrixXd::Zero(5, c);
        for (int i = 0; i < 5; ++i) ind(i, l[static_cast<std::size_t>(i)]) = 1.0;
        EXPECT_EQ(hl::combo_features_2(ind), brute_force_pairs(l, c));
        return;
      }
      for (int v = lo; v < c; ++v) {
        l[static_cast<std::size_t>(pos)] = v;
        rec(pos + 1, v);
      }
    };
    rec(0, 0);
  }
}

TEST(Combos, SoftSumsToTen) {
  gen::Rng rng(3);
  for (int t = 0; t < 1000; ++t) {
    const int c = gen::uniform_int(rng, 1, 12);
    const Eigen::VectorXd x = hl::combo_features_2(gen::simplex_rows(rng, 5, c));
    EXPECT_NEAR(x.sum(), 10.0, 1e-9);
    EXPECT_GE(x.minCoeff(), 0.0);
  }
}

TEST(Combos, RejectsBadRows) {
  Eigen::MatrixXd u = Eigen::MatrixXd::Constant(5, 2, 0.6);
  EXPECT_THROW(hl::combo_features_2(u), hs::InvalidArgument);
  EXPECT_THROW(hl::combo_features_2(Eigen::MatrixXd::Constant(4, 2, 0.5)), hs::InvalidArgument);
}

TEST(Stats, AdjustedRating) {
  EXPECT_DOUBLE_EQ(hl::adjust_offrtg(112.0, 300.0, 100.0), 112.0);
  EXPECT_DOUBLE_EQ(hl::adjust_offrtg(112.0, 420.0, 100.0), 112.0);
  EXPECT_DOUBLE_EQ(hl::adjust_offrtg(110.0, 150.0, 100.0), 105.0);
  EXPECT_NEAR(hl::adjust_offrtg(120.0, 50.0, 105.0), 120.0 / 6.0 + 105.0 * 5.0 / 6.0, 1e-12);
  EXPECT_NEAR(hl::adjust_offrtg(120.0, 50.0, 105.0), 107.5, 1e-12);
  EXPECT_THROW(hl::adjust_offrtg(110.0, -1.0, 100.0), hs::InvalidArgument);
}

TEST(Stats, ShootingAndPossessionRates) {
  EXPECT_EQ(hl::true_shooting_pct(0, 10, 2), 0.0);
  EXPECT_DOUBLE_EQ(hl::true_shooting_pct(100, 50, 0), 100.0);
  EXPECT_NEAR(hl::true_shooting_pct(30, 20, 10), 30.0 / (2.0 * 24.4) * 100.0, 1e-12);
  EXPECT_NEAR(hl::true_shooting_pct(30, 20, 10), 61.4754, 1e-4);
  EXPECT_EQ(hl::points_per_possession(0, 10, 0, 1), 0.0);
  EXPECT_DOUBLE_EQ(hl::points_per_possession(50, 40, 0, 10), 1.0);
  EXPECT_LT(hl::points_per_possession(50, 40, 0, 11), hl::points_per_possession(50, 40, 0, 10));
  EXPECT_THROW(hl::true_shooting_pct(1, 0, 0), hs::InvalidArgument);
}

TEST(Design, MinutesThresholdIsStrict) {
  const auto pc = hl::PlayerClusters::from_labels({"a", "b", "c", "d", "e"}, {0, 0, 1, 1, 1}, 2);
  const std::vector<hs::LineupRecord> ls{lineup("T", {"a", "b", "c", "d", "e"}, 49.0, 110.0),
                                         lineup("T", {"e", "d", "c", "b", "a"}, 50.0, 110.0)};
  hl::DesignOptions o;
  EXPECT_EQ(hl::build_design(ls, pc, o).x.rows(), 0);
  std::vector<hs::LineupRecord> kept = ls;
  kept.push_back(lineup("T", {"a", "b", "c", "d", "e"}, 50.1, 110.0));
  EXPECT_EQ(hl::build_design(kept, pc, o).x.rows(), 1);
}

TEST(Design, RowSumsAndOrdering) {
  const std::vector<std::string> ids{"a", "b", "c", "d", "e", "f", "g"};
  const auto pc = hl::PlayerClusters::from_labels(ids, {0, 1, 2, 0, 1, 2, 0}, 3);
  const std::vector<hs::LineupRecord> ls{lineup("ZZZ", {"a", "b", "c", "d", "e"}, 80, 100),
                                         lineup("AAA", {"c", "d", "e", "f", "g"}, 300, 120),
                                         lineup("AAA", {"a", "b", "e", "f", "g"}, 150, 110, 100)};
  hl::DesignOptions combos;
  const auto d = hl::build_design(ls, pc, combos);
  ASSERT_EQ(d.x.rows(), 3);
  for (Eigen::Index r = 0; r < 3; ++r) EXPECT_NEAR(d.x.row(r).sum(), 10.0, 1e-12);
  EXPECT_EQ(d.team_names, (std::vector<std::string>{"AAA", "ZZZ"}));
  EXPECT_EQ(d.team_index, (std::vector<int>{0, 0, 1}));
  EXPECT_DOUBLE_EQ(d.y(0), 105.0);
  EXPECT_DOUBLE_EQ(d.y(1), 120.0);
  hl::DesignOptions counts;
  counts.mode = hl::DesignMode::kCounts5;
  const auto dc = hl::build_design(ls, pc, counts);
  for (Eigen::Index r = 0; r < 3; ++r) EXPECT_NEAR(dc.x.row(r).sum(), 5.0, 1e-12);
  EXPECT_EQ(dc.x.cols(), 3);
}

TEST(Design, UnknownPlayersAreNamed) {
  const auto pc = hl::PlayerClusters::from_labels({"a", "b", "c", "d"}, {0, 0, 1, 1}, 2);
  const std::vector<hs::LineupRecord> ls{lineup("T", {"a", "b", "c", "d", "zed"}, 100, 100)};
  try {
    hl::build_design(ls, pc);
    FAIL() << "expected DataError";
  } catch (const hs::DataError& e) {
    EXPECT_NE(std::string(e.what()).find("zed"), std::string::npos);
  }
}

TEST(Design, ModeNames) {
  EXPECT_EQ(hl::parse_design_mode("counts5"), hl::DesignMode::kCounts5);
  EXPECT_EQ(hl::to_string(hl::DesignMode::kCombos2), "combos2");
  EXPECT_THROW(hl::parse_design_mode("pairs"), hs::Error);
}
