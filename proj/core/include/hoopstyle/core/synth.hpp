#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "hoopstyle/core/config.hpp"
#include "hoopstyle/core/types.hpp"

namespace hoopstyle {

// Generator settings. Each of the K archetypes is a template over shot
// trajectories and playtype mixes; lineup ratings follow the hierarchical
// linear model over two-player archetype combinations.
struct SynthSpec {
  SynthConfig params;
  Point2 rim{1.6, 7.62};
  double min_lineup_minutes = 50.0;
  double horizon_minutes = 300.0;
  std::string season = "2023-24";

  static SynthSpec from_config(const PipelineConfig& config);
  void validate() const;
};

struct SynthTruth {
  int archetypes = 0;
  std::vector<std::string> player_ids;
  std::vector<int> labels;  // archetype per player
  std::vector<std::string> team_names;
  std::vector<std::string> feature_names;  // combo_<k>_<k'>
  int planted_feature = 0;
  double planted_effect = 0.0;
  Eigen::VectorXd beta_pop;   // F, population mean of beta_t
  Eigen::MatrixXd beta_team;  // T x F
  Eigen::VectorXd alpha;      // T
  double sigma_beta = 0.0;
  double epsilon = 0.0;
  double mu_alpha = 0.0;
};

// The regression problem the generator drew ratings from, restricted to
// lineups above the minutes threshold and ordered like build_design.
struct SynthDesign {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  std::vector<int> team_index;
  std::vector<std::string> row_keys;
};

struct SynthDataset {
  std::vector<ShotSegment> segments;
  std::vector<PlaytypeProfile> profiles;
  std::vector<LineupRecord> lineups;
  SynthTruth truth;
  SynthDesign design;
};

// Pure function of (spec, seed).
SynthDataset synthesize_dataset(const SynthSpec& spec, std::uint64_t seed);

std::string truth_to_json(const SynthTruth& truth);
SynthTruth truth_from_json(std::string_view text);

}  // namespace hoopstyle
