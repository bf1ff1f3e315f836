#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "hoopstyle/core/types.hpp"

namespace hoopstyle {

struct McmcConfig {
  int chains = 4;
  int warmup = 1000;
  int draws = 1000;
  std::uint64_t seed = 20240101;
  double target_accept = 0.8;
  int max_tree_depth = 10;
};

struct FeatureConfig {
  double pca_variance_target = 0.99;
  // Offensive direction is unified, so one rim position serves the dataset.
  Point2 rim{1.6, 7.62};
};

struct ShotClusterConfig {
  int min_shots_per_player = 30;
  double wasserstein_p = 1.0;
  int n_shot_clusters = 13;
  int k_min = 2;
  int k_max = 20;
  // "" = no merge, "default" = 13 -> 5 map, anything else is a path to a
  // merge_map.json.
  std::string merge_map;
};

struct RoleClusterConfig {
  int n_role_clusters = 10;
  double fuzzifier_q = 1.2;
  int min_games = 20;
  double max_missing_fraction = 0.5;
  bool standardize = false;
  double tol = 1e-8;
  int max_iter = 500;
  // Reporting threshold for "belongs to" summaries.
  double membership_threshold = 0.9;
};

struct LineupConfig {
  double min_lineup_minutes = 50.0;
  double adjust_horizon_minutes = 300.0;
};

struct InferenceConfig {
  double mu_alpha_shots = 105.0;
  double mu_alpha_roles = 110.0;
  double alpha_sd = 10.0;
  double mu_beta_sd = 10.0;
  double sigma_beta_scale = 10.0;
  double epsilon_scale = 10.0;
  bool per_feature_sigma_beta = false;
  bool non_centered = true;
  double rhat_threshold = 1.1;
  double max_divergent_fraction = 0.1;
};

// Parameters of the synthetic generator exposed through the config file.
struct SynthConfig {
  int archetypes = 3;
  int n_players = 60;
  int shots_per_player = 30;
  int n_teams = 10;
  int roster_size = 12;
  int lineups_per_team = 60;
  int planted_pair_a = 0;
  int planted_pair_b = 1;
  double planted_effect = 2.0;
  double background_effect_sd = 0.3;
  double sigma_beta = 0.3;
  double epsilon = 3.0;
  double mu_alpha = 105.0;
  double alpha_sd = 3.0;
  double missing_playtype_rate = 0.1;
};

struct PipelineConfig {
  std::uint64_t seed = 7;
  int threads = 1;
  FeatureConfig features;
  ShotClusterConfig shots;
  RoleClusterConfig roles;
  LineupConfig lineups;
  InferenceConfig inference;
  McmcConfig mcmc;
  SynthConfig synth;
};

// Parses a JSON document. Missing keys keep their defaults; unknown keys and
// out-of-range values raise ConfigError naming the offending key.
PipelineConfig parse_config(std::string_view json_text);
PipelineConfig load_config(const std::string& path);
// Canonical serialization (sorted keys) so equal configs hash equally.
std::string config_to_json(const PipelineConfig& config);

void check_config(const PipelineConfig& config);

}  // namespace hoopstyle
