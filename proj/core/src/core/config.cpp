#include "hoopstyle/core/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "hoopstyle/error.hpp"
#include "json.hpp"

namespace hoopstyle {

namespace {

using nlohmann::json;

// Pulls typed fields out of one JSON object and rejects anything left over.
class SectionReader {
 public:
  SectionReader(const json& object, std::string path)
      : object_(object), path_(std::move(path)) {
    if (!object_.is_object()) {
      throw ConfigError(path_ + ": expected a JSON object");
    }
  }

  template <typename T>
  void field(const char* key, T& out) {
    seen_.insert(key);
    auto it = object_.find(key);
    if (it == object_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception& e) {
      throw ConfigError(path_ + "." + key + ": " + e.what());
    }
  }

  const json* section(const char* key) {
    seen_.insert(key);
    auto it = object_.find(key);
    return it == object_.end() ? nullptr : &*it;
  }

  void finish() const {
    for (const auto& [key, value] : object_.items()) {
      if (!seen_.count(key)) {
        throw ConfigError(path_ + ": unknown key '" + key + "'");
      }
    }
  }

  const std::string& path() const { return path_; }

 private:
  const json& object_;
  std::string path_;
  std::set<std::string> seen_;
};

void read_mcmc(const json& j, McmcConfig& c) {
  SectionReader r(j, "mcmc");
  r.field("chains", c.chains);
  r.field("warmup", c.warmup);
  r.field("draws", c.draws);
  r.field("seed", c.seed);
  r.field("target_accept", c.target_accept);
  r.field("max_tree_depth", c.max_tree_depth);
  r.finish();
}

void read_features(const json& j, FeatureConfig& c) {
  SectionReader r(j, "features");
  r.field("pca_variance_target", c.pca_variance_target);
  r.field("rim_x", c.rim.x);
  r.field("rim_y", c.rim.y);
  r.finish();
}

void read_shots(const json& j, ShotClusterConfig& c) {
  SectionReader r(j, "shots");
  r.field("min_shots_per_player", c.min_shots_per_player);
  r.field("wasserstein_p", c.wasserstein_p);
  r.field("n_shot_clusters", c.n_shot_clusters);
  r.field("k_min", c.k_min);
  r.field("k_max", c.k_max);
  r.field("merge_map", c.merge_map);
  r.finish();
}

void read_roles(const json& j, RoleClusterConfig& c) {
  SectionReader r(j, "roles");
  r.field("n_role_clusters", c.n_role_clusters);
  r.field("fuzzifier_q", c.fuzzifier_q);
  r.field("min_games", c.min_games);
  r.field("max_missing_fraction", c.max_missing_fraction);
  r.field("standardize", c.standardize);
  r.field("tol", c.tol);
  r.field("max_iter", c.max_iter);
  r.field("membership_threshold", c.membership_threshold);
  r.finish();
}

void read_lineups(const json& j, LineupConfig& c) {
  SectionReader r(j, "lineups");
  r.field("min_lineup_minutes", c.min_lineup_minutes);
  r.field("adjust_horizon_minutes", c.adjust_horizon_minutes);
  r.finish();
}

void read_inference(const json& j, InferenceConfig& c) {
  SectionReader r(j, "inference");
  r.field("mu_alpha_shots", c.mu_alpha_shots);
  r.field("mu_alpha_roles", c.mu_alpha_roles);
  r.field("alpha_sd", c.alpha_sd);
  r.field("mu_beta_sd", c.mu_beta_sd);
  r.field("sigma_beta_scale", c.sigma_beta_scale);
  r.field("epsilon_scale", c.epsilon_scale);
  r.field("per_feature_sigma_beta", c.per_feature_sigma_beta);
  r.field("non_centered", c.non_centered);
  r.field("rhat_threshold", c.rhat_threshold);
  r.field("max_divergent_fraction", c.max_divergent_fraction);
  r.finish();
}

void read_synth(const json& j, SynthConfig& c) {
  SectionReader r(j, "synth");
  r.field("archetypes", c.archetypes);
  r.field("n_players", c.n_players);
  r.field("shots_per_player", c.shots_per_player);
  r.field("n_teams", c.n_teams);
  r.field("roster_size", c.roster_size);
  r.field("lineups_per_team", c.lineups_per_team);
  r.field("planted_pair_a", c.planted_pair_a);
  r.field("planted_pair_b", c.planted_pair_b);
  r.field("planted_effect", c.planted_effect);
  r.field("background_effect_sd", c.background_effect_sd);
  r.field("sigma_beta", c.sigma_beta);
  r.field("epsilon", c.epsilon);
  r.field("mu_alpha", c.mu_alpha);
  r.field("alpha_sd", c.alpha_sd);
  r.field("missing_playtype_rate", c.missing_playtype_rate);
  r.finish();
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

}  // namespace

void check_config(const PipelineConfig& c) {
  require(c.threads >= 1, "threads must be >= 1");
  require(c.features.pca_variance_target > 0.0 && c.features.pca_variance_target <= 1.0,
          "features.pca_variance_target must be in (0, 1]");
  require(c.shots.min_shots_per_player >= 1, "shots.min_shots_per_player must be >= 1");
  require(c.shots.wasserstein_p >= 1.0, "shots.wasserstein_p must be >= 1");
  require(c.shots.n_shot_clusters >= 1, "shots.n_shot_clusters must be >= 1");
  require(c.shots.k_min >= 2 && c.shots.k_max >= c.shots.k_min,
          "shots.k_min/k_max must satisfy 2 <= k_min <= k_max");
  require(c.roles.n_role_clusters >= 2, "roles.n_role_clusters must be >= 2");
  require(c.roles.fuzzifier_q > 1.0, "roles.fuzzifier_q must be > 1");
  require(c.roles.max_missing_fraction >= 0.0 && c.roles.max_missing_fraction <= 1.0,
          "roles.max_missing_fraction must be in [0, 1]");
  require(c.roles.tol > 0.0 && c.roles.max_iter >= 1, "roles.tol/max_iter must be positive");
  require(c.lineups.min_lineup_minutes >= 0.0, "lineups.min_lineup_minutes must be >= 0");
  require(c.lineups.adjust_horizon_minutes > 0.0, "lineups.adjust_horizon_minutes must be > 0");
  const auto& inf = c.inference;
  require(inf.alpha_sd > 0 && inf.mu_beta_sd > 0 && inf.sigma_beta_scale > 0 &&
              inf.epsilon_scale > 0,
          "inference prior scales must be > 0");
  require(inf.rhat_threshold > 1.0, "inference.rhat_threshold must be > 1");
  require(inf.max_divergent_fraction >= 0.0 && inf.max_divergent_fraction <= 1.0,
          "inference.max_divergent_fraction must be in [0, 1]");
  require(c.mcmc.chains >= 2, "mcmc.chains must be >= 2");
  require(c.mcmc.warmup >= 0 && c.mcmc.draws >= 4, "mcmc.warmup >= 0 and mcmc.draws >= 4");
  require(c.mcmc.target_accept > 0.0 && c.mcmc.target_accept < 1.0,
          "mcmc.target_accept must be in (0, 1)");
  require(c.mcmc.max_tree_depth >= 1, "mcmc.max_tree_depth must be >= 1");
  const auto& s = c.synth;
  require(s.archetypes >= 2, "synth.archetypes must be >= 2");
  require(s.n_players >= s.archetypes, "synth.n_players must be >= synth.archetypes");
  require(s.shots_per_player >= 1, "synth.shots_per_player must be >= 1");
  require(s.n_teams >= 1 && s.roster_size >= 5 && s.roster_size <= s.n_players,
          "synth.n_teams >= 1 and 5 <= synth.roster_size <= synth.n_players");
  require(s.lineups_per_team >= 1, "synth.lineups_per_team must be >= 1");
  require(s.planted_pair_a >= 0 && s.planted_pair_b >= s.planted_pair_a &&
              s.planted_pair_b < s.archetypes,
          "synth.planted_pair must satisfy 0 <= a <= b < archetypes");
  require(s.sigma_beta > 0 && s.epsilon > 0 && s.alpha_sd >= 0 && s.background_effect_sd >= 0,
          "synth noise scales must be positive");
  require(s.missing_playtype_rate >= 0.0 && s.missing_playtype_rate < 0.5,
          "synth.missing_playtype_rate must be in [0, 0.5)");
}

PipelineConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  PipelineConfig c;
  SectionReader r(root, "config");
  r.field("seed", c.seed);
  r.field("threads", c.threads);
  if (const json* s = r.section("features")) read_features(*s, c.features);
  if (const json* s = r.section("shots")) read_shots(*s, c.shots);
  if (const json* s = r.section("roles")) read_roles(*s, c.roles);
  if (const json* s = r.section("lineups")) read_lineups(*s, c.lineups);
  if (const json* s = r.section("inference")) read_inference(*s, c.inference);
  if (const json* s = r.section("mcmc")) read_mcmc(*s, c.mcmc);
  if (const json* s = r.section("synth")) read_synth(*s, c.synth);
  r.finish();
  check_config(c);
  return c;
}

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string config_to_json(const PipelineConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  j["features"] = {{"pca_variance_target", c.features.pca_variance_target},
                   {"rim_x", c.features.rim.x},
                   {"rim_y", c.features.rim.y}};
  j["shots"] = {{"min_shots_per_player", c.shots.min_shots_per_player},
                {"wasserstein_p", c.shots.wasserstein_p},
                {"n_shot_clusters", c.shots.n_shot_clusters},
                {"k_min", c.shots.k_min},
                {"k_max", c.shots.k_max},
                {"merge_map", c.shots.merge_map}};
  j["roles"] = {{"n_role_clusters", c.roles.n_role_clusters},
                {"fuzzifier_q", c.roles.fuzzifier_q},
                {"min_games", c.roles.min_games},
                {"max_missing_fraction", c.roles.max_missing_fraction},
                {"standardize", c.roles.standardize},
                {"tol", c.roles.tol},
                {"max_iter", c.roles.max_iter},
                {"membership_threshold", c.roles.membership_threshold}};
  j["lineups"] = {{"min_lineup_minutes", c.lineups.min_lineup_minutes},
                  {"adjust_horizon_minutes", c.lineups.adjust_horizon_minutes}};
  const auto& inf = c.inference;
  j["inference"] = {{"mu_alpha_shots", inf.mu_alpha_shots},
                    {"mu_alpha_roles", inf.mu_alpha_roles},
                    {"alpha_sd", inf.alpha_sd},
                    {"mu_beta_sd", inf.mu_beta_sd},
                    {"sigma_beta_scale", inf.sigma_beta_scale},
                    {"epsilon_scale", inf.epsilon_scale},
                    {"per_feature_sigma_beta", inf.per_feature_sigma_beta},
                    {"non_centered", inf.non_centered},
                    {"rhat_threshold", inf.rhat_threshold},
                    {"max_divergent_fraction", inf.max_divergent_fraction}};
  j["mcmc"] = {{"chains", c.mcmc.chains},
               {"warmup", c.mcmc.warmup},
               {"draws", c.mcmc.draws},
               {"seed", c.mcmc.seed},
               {"target_accept", c.mcmc.target_accept},
               {"max_tree_depth", c.mcmc.max_tree_depth}};
  const auto& s = c.synth;
  j["synth"] = {{"archetypes", s.archetypes},
                {"n_players", s.n_players},
                {"shots_per_player", s.shots_per_player},
                {"n_teams", s.n_teams},
                {"roster_size", s.roster_size},
                {"lineups_per_team", s.lineups_per_team},
                {"planted_pair_a", s.planted_pair_a},
                {"planted_pair_b", s.planted_pair_b},
                {"planted_effect", s.planted_effect},
                {"background_effect_sd", s.background_effect_sd},
                {"sigma_beta", s.sigma_beta},
                {"epsilon", s.epsilon},
                {"mu_alpha", s.mu_alpha},
                {"alpha_sd", s.alpha_sd},
                {"missing_playtype_rate", s.missing_playtype_rate}};
  return j.dump(2);
}

}  // namespace hoopstyle
