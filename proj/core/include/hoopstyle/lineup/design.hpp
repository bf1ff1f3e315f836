#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hoopstyle/core/types.hpp"

namespace hoopstyle::lineup {

enum class DesignMode { kCounts5, kCombos2 };

DesignMode parse_design_mode(const std::string& text);  // "counts5" | "combos2"
std::string to_string(DesignMode mode);

// Per-player membership rows over c clusters. Hard labels are stored as
// indicator rows.
struct PlayerClusters {
  int c = 0;
  std::vector<std::string> cluster_names;
  std::map<std::string, Eigen::VectorXd> rows;

  static PlayerClusters from_labels(const std::vector<std::string>& players,
                                    const std::vector<int>& labels, int c);
  static PlayerClusters from_memberships(const std::vector<std::string>& players,
                                         const Eigen::MatrixXd& u);
};

struct DesignOptions {
  DesignMode mode = DesignMode::kCombos2;
  double min_minutes = 50.0;  // strictly more is kept
  double horizon = 300.0;
};

struct Design {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  std::vector<int> team_index;
  std::vector<std::string> team_names;  // team_index -> name
  std::vector<std::string> row_keys;    // team|season|players
  std::vector<std::string> feature_names;
  std::vector<std::string> feature_labels;  // e.g. "Close-range/Mid-range"
  std::vector<double> raw_offrtg;
};

// Rows are ordered by (team, season, lineup key). Throws DataError naming
// any player without a cluster row.
Design build_design(std::span<const LineupRecord> lineups, const PlayerClusters& clusters,
                    const DesignOptions& options = {});

void write_design(std::ostream& out, const Design& d);
void write_design_file(const std::string& path, const Design& d);

}  // namespace hoopstyle::lineup
