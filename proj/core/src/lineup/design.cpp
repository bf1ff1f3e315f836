#include "hoopstyle/lineup/design.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <set>
#include <tuple>

#include "hoopstyle/error.hpp"
#include "hoopstyle/lineup/combos.hpp"
#include "hoopstyle/lineup/stats.hpp"
#include "hoopstyle/util/csv.hpp"

namespace hoopstyle::lineup {

DesignMode parse_design_mode(const std::string& text) {
  if (text == "counts5") return DesignMode::kCounts5;
  if (text == "combos2") return DesignMode::kCombos2;
  throw ConfigError("unknown design mode '" + text + "' (expected counts5 or combos2)");
}

std::string to_string(DesignMode mode) {
  return mode == DesignMode::kCounts5 ? "counts5" : "combos2";
}

PlayerClusters PlayerClusters::from_labels(const std::vector<std::string>& players,
                                           const std::vector<int>& labels, int c) {
  if (players.size() != labels.size()) throw InvalidArgument("player/label count mismatch");
  PlayerClusters pc;
  pc.c = c;
  for (std::size_t i = 0; i < players.size(); ++i) {
    if (labels[i] < 0 || labels[i] >= c) throw InvalidArgument("label out of range");
    Eigen::VectorXd row = Eigen::VectorXd::Zero(c);
    row(labels[i]) = 1.0;
    pc.rows[players[i]] = std::move(row);
  }
  return pc;
}

PlayerClusters PlayerClusters::from_memberships(const std::vector<std::string>& players,
                                                const Eigen::MatrixXd& u) {
  if (players.size() != static_cast<std::size_t>(u.rows())) {
    throw InvalidArgument("player/membership row count mismatch");
  }
  PlayerClusters pc;
  pc.c = static_cast<int>(u.cols());
  for (std::size_t i = 0; i < players.size(); ++i) {
    pc.rows[players[i]] = u.row(static_cast<Eigen::Index>(i)).transpose();
  }
  return pc;
}

Design build_design(std::span<const LineupRecord> lineups, const PlayerClusters& clusters,
                    const DesignOptions& options) {
  const int c = clusters.c;
  if (c < 1) throw InvalidArgument("build_design: no clusters");

  std::vector<const LineupRecord*> kept;
  for (const auto& l : lineups) {
    if (l.minutes > options.min_minutes) kept.push_back(&l);
  }
  std::sort(kept.begin(), kept.end(), [](const LineupRecord* a, const LineupRecord* b) {
    return std::tuple(a->team, a->season, a->key()) < std::tuple(b->team, b->season, b->key());
  });

  std::set<std::string> missing;
  for (const auto* l : kept) {
    for (const auto& p : l->player_ids) {
      if (!clusters.rows.contains(p)) missing.insert(p);
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& p : missing) list += (list.empty() ? "" : ", ") + p;
    throw DataError("lineups reference players without cluster assignments: " + list);
  }

  Design d;
  std::set<std::string> teams;
  for (const auto* l : kept) teams.insert(l->team);
  d.team_names.assign(teams.begin(), teams.end());

  std::vector<std::string> names =
      clusters.cluster_names.size() == static_cast<std::size_t>(c) ? clusters.cluster_names
                                                                    : std::vector<std::string>{};
  if (names.empty()) {
    for (int k = 0; k < c; ++k) names.push_back(std::to_string(k));
  }
  if (options.mode == DesignMode::kCombos2) {
    d.feature_names = combo_feature_names(c);
    for (int i = 0; i < n_combination_features(c); ++i) {
      const auto [k, k2] = pair_from_index(i, c);
      d.feature_labels.push_back(names[static_cast<std::size_t>(k)] + "/" +
                                 names[static_cast<std::size_t>(k2)]);
    }
  } else {
    d.feature_names = count_feature_names(c);
    d.feature_labels = names;
  }

  const auto n = static_cast<Eigen::Index>(kept.size());
  d.x.resize(n, static_cast<Eigen::Index>(d.feature_names.size()));
  d.y.resize(n);
  for (Eigen::Index r = 0; r < n; ++r) {
    const LineupRecord& l = *kept[static_cast<std::size_t>(r)];
    if (l.player_ids.size() != kLineupSize) {
      throw DataError("lineup " + l.key() + " does not have 5 players");
    }
    Eigen::MatrixXd m(kLineupSize, c);
    for (int i = 0; i < kLineupSize; ++i) {
      m.row(i) = clusters.rows.at(l.player_ids[static_cast<std::size_t>(i)]).transpose();
    }
    d.x.row(r) = (options.mode == DesignMode::kCombos2 ? combo_features_2(m)
                                                       : count_features_5(m))
                     .transpose();
    d.y(r) = adjust_offrtg(l.offrtg, l.minutes, l.team_offrtg, options.horizon);
    const auto it = std::lower_bound(d.team_names.begin(), d.team_names.end(), l.team);
    d.team_index.push_back(static_cast<int>(it - d.team_names.begin()));
    d.row_keys.push_back(l.team + "|" + l.season + "|" + l.key());
    d.raw_offrtg.push_back(l.offrtg);
  }
  return d;
}

void write_design(std::ostream& out, const Design& d) {
  std::vector<std::string> header{"lineup_key", "team_index"};
  header.insert(header.end(), d.feature_names.begin(), d.feature_names.end());
  header.push_back("y");
  csv::write_row(out, header);
  for (Eigen::Index r = 0; r < d.x.rows(); ++r) {
    std::vector<std::string> row{d.row_keys[static_cast<std::size_t>(r)],
                                 std::to_string(d.team_index[static_cast<std::size_t>(r)])};
    for (Eigen::Index j = 0; j < d.x.cols(); ++j) row.push_back(csv::format(d.x(r, j)));
    row.push_back(csv::format(d.y(r)));
    csv::write_row(out, row);
  }
}

void write_design_file(const std::string& path, const Design& d) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  write_design(out, d);
}

}  // namespace hoopstyle::lineup
