#include "hoopstyle/core/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <tuple>

#include "hoopstyle/error.hpp"
#include "hoopstyle/lineup/combos.hpp"
#include "json.hpp"

namespace hoopstyle {

namespace {

constexpr int kFrames = 36;  // 3.5 s at 10 Hz, shot on the last frame
constexpr double kDt = 0.1;

// Independent stream per generator stage so changing one stage's sizes
// leaves the others untouched.
std::mt19937_64 stream(std::uint64_t seed, std::uint32_t id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), id};
  return std::mt19937_64(seq);
}

struct ShotTemplate {
  double radius;
  double angle;
  double hold;
  double drive;
};

ShotTemplate shot_template(int k, int archetypes) {
  const double a = static_cast<double>(k) / (archetypes - 1);
  return {1.2 + 6.3 * a, 0.7 * std::sin(2.4 * k), 2.4 - 1.8 * a, 3.5 * (1.0 - a)};
}

std::string player_id(int i, const std::string& season) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "P%03d", i);
  return season + ":" + buf;
}

std::string team_name(int t) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "T%02d", t);
  return buf;
}

ShotSegment make_segment(const std::string& id, const ShotTemplate& player, Point2 rim,
                         std::mt19937_64& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double theta = player.angle + 0.25 * n01(rng);
  const double r = std::max(0.5, player.radius + 0.4 * n01(rng));
  const double hold = std::round(std::clamp(player.hold + 0.15 * n01(rng), 0.2, 3.3) / kDt) * kDt;
  const double catch_theta = theta + 0.1 * n01(rng);
  const double catch_r = r + player.drive * (1.0 + 0.1 * n01(rng));
  const Point2 shot{rim.x + r * std::cos(theta), rim.y + r * std::sin(theta)};
  const Point2 recv{rim.x + catch_r * std::cos(catch_theta), rim.y + catch_r * std::sin(catch_theta)};
  const double dir = 2.0 * std::numbers::pi * u01(rng);
  const double run = 1.0 + 3.0 * u01(rng);
  const Point2 start{recv.x + run * std::cos(dir), recv.y + run * std::sin(dir)};

  ShotSegment s;
  s.player_id = id;
  const double t_shot = (kFrames - 1) * kDt;
  const double t_recv = t_shot - hold;
  for (int j = 0; j < kFrames; ++j) {
    const double t = j * kDt;
    Point2 p;
    if (t < t_recv - 1e-9) {
      const double w = t / t_recv;
      p = {start.x + w * (recv.x - start.x), start.y + w * (recv.y - start.y)};
    } else {
      const double w = (t - t_recv) / hold;
      p = {recv.x + w * (shot.x - recv.x), recv.y + w * (shot.y - recv.y)};
    }
    p.x += 0.03 * n01(rng);
    p.y += 0.03 * n01(rng);
    s.frames.push_back({t, p, t >= t_recv - 1e-9});
  }
  const Point2 last = s.frames.back().shooter;
  s.is_three = std::hypot(last.x - rim.x, last.y - rim.y) >= 6.75;
  s.made_shot = u01(rng) < 0.62 - 0.03 * r;
  return s;
}

PlaytypeProfile make_profile(const std::string& id, const std::string& season, int k,
                             int archetypes, double missing_rate, std::mt19937_64& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::gamma_distribution<double> gamma(20.0, 1.0);
  const double a = static_cast<double>(k) / (archetypes - 1);
  const double center = 10.0 * a;

  std::array<double, kNumRawPlaytypes> pct{};
  double total = 0.0;
  for (std::size_t j = 0; j < kNumRawPlaytypes; ++j) {
    const double d = static_cast<double>(j) - center;
    pct[j] = (1.0 + 12.0 * std::exp(-0.5 * d * d)) * gamma(rng) / 20.0;
    total += pct[j];
  }
  PlaytypeProfile p;
  p.player_id = id;
  p.season = season;
  int missing = 0;
  for (std::size_t j = 0; j < kNumRawPlaytypes; ++j) {
    const double v = std::round(pct[j] / total * 100.0 * 1e6) / 1e6;
    const bool drop = u01(rng) < missing_rate && missing < 3;
    if (drop) {
      ++missing;
    } else {
      p.playtype_pct[j] = v;
    }
  }
  // Rounding may push a complete profile off 100; absorb it in the largest entry.
  if (missing == 0) {
    double sum = 0.0;
    std::size_t biggest = 0;
    for (std::size_t j = 0; j < kNumRawPlaytypes; ++j) {
      sum += *p.playtype_pct[j];
      if (*p.playtype_pct[j] > *p.playtype_pct[biggest]) biggest = j;
    }
    *p.playtype_pct[biggest] += 100.0 - sum;
  } else {
    double sum = 0.0;
    for (const auto& v : p.playtype_pct) sum += v.value_or(0.0);
    if (sum > 100.0) {
      for (auto& v : p.playtype_pct) {
        if (v) *v *= 100.0 / sum;
      }
    }
  }
  p.ast_pct = std::clamp(10.0 + 25.0 * (1.0 - a) + 3.0 * n01(rng), 0.0, 100.0);
  p.usg_pct = std::clamp(15.0 + 10.0 * (1.0 - a) + 2.0 * n01(rng), 0.0, 100.0);
  p.games_played = 20 + static_cast<int>(u01(rng) * 63.0);
  p.minutes_per_game = std::round((12.0 + 24.0 * u01(rng)) * 10.0) / 10.0;
  return p;
}

}  // namespace

SynthSpec SynthSpec::from_config(const PipelineConfig& config) {
  SynthSpec s;
  s.params = config.synth;
  s.rim = config.features.rim;
  s.min_lineup_minutes = config.lineups.min_lineup_minutes;
  s.horizon_minutes = config.lineups.adjust_horizon_minutes;
  return s;
}

void SynthSpec::validate() const {
  const auto& p = params;
  if (p.archetypes < 2) throw InvalidArgument("synth: need at least 2 archetypes");
  if (p.n_players < lineup::kLineupSize) throw InvalidArgument("synth: need at least 5 players");
  if (p.shots_per_player < 1) throw InvalidArgument("synth: shots_per_player must be positive");
  if (p.n_teams < 1) throw InvalidArgument("synth: need at least one team");
  if (p.roster_size < lineup::kLineupSize || p.roster_size > p.n_players) {
    throw InvalidArgument("synth: roster size must lie in [5, n_players]");
  }
  if (p.lineups_per_team < 1) throw InvalidArgument("synth: lineups_per_team must be positive");
  const auto r = static_cast<double>(p.roster_size);
  const double subsets = r * (r - 1) * (r - 2) * (r - 3) * (r - 4) / 120.0;
  if (p.lineups_per_team > subsets) throw InvalidArgument("synth: more lineups than distinct 5-player sets");
  if (p.planted_pair_a < 0 || p.planted_pair_a >= p.archetypes || p.planted_pair_b < 0 ||
      p.planted_pair_b >= p.archetypes) {
    throw InvalidArgument("synth: planted pair outside archetype range");
  }
  if (!(p.sigma_beta > 0.0 && p.epsilon > 0.0 && p.alpha_sd >= 0.0 && p.background_effect_sd >= 0.0)) {
    throw InvalidArgument("synth: scales must be positive");
  }
  if (!(p.missing_playtype_rate >= 0.0 && p.missing_playtype_rate < 1.0)) {
    throw InvalidArgument("synth: missing_playtype_rate must lie in [0, 1)");
  }
  if (!(horizon_minutes > 0.0)) throw InvalidArgument("synth: horizon must be positive");
}

SynthDataset synthesize_dataset(const SynthSpec& spec, std::uint64_t seed) {
  spec.validate();
  const auto& p = spec.params;
  const int K = p.archetypes;
  SynthDataset out;
  SynthTruth& truth = out.truth;
  truth.archetypes = K;
  truth.sigma_beta = p.sigma_beta;
  truth.epsilon = p.epsilon;
  truth.mu_alpha = p.mu_alpha;

  for (int i = 0; i < p.n_players; ++i) {
    truth.player_ids.push_back(player_id(i, spec.season));
    truth.labels.push_back(i % K);
  }

  {
    auto rng = stream(seed, 1);
    std::normal_distribution<double> n01(0.0, 1.0);
    for (int i = 0; i < p.n_players; ++i) {
      ShotTemplate t = shot_template(truth.labels[static_cast<std::size_t>(i)], K);
      t.angle += 0.15 * n01(rng);
      t.radius += 0.3 * n01(rng);
      t.hold += 0.1 * n01(rng);
      for (int s = 0; s < p.shots_per_player; ++s) {
        out.segments.push_back(make_segment(truth.player_ids[static_cast<std::size_t>(i)], t, spec.rim, rng));
      }
    }
  }

  {
    auto rng = stream(seed, 2);
    for (int i = 0; i < p.n_players; ++i) {
      out.profiles.push_back(make_profile(truth.player_ids[static_cast<std::size_t>(i)], spec.season,
                                          truth.labels[static_cast<std::size_t>(i)], K,
                                          p.missing_playtype_rate, rng));
    }
  }

  const int F = lineup::n_combination_features(K);
  truth.feature_names = lineup::combo_feature_names(K);
  truth.planted_feature = lineup::pair_index(p.planted_pair_a, p.planted_pair_b, K);
  truth.planted_effect = p.planted_effect;
  {
    auto rng = stream(seed, 3);
    std::normal_distribution<double> n01(0.0, 1.0);
    truth.beta_pop.resize(F);
    for (int f = 0; f < F; ++f) truth.beta_pop(f) = p.background_effect_sd * n01(rng);
    truth.beta_pop(truth.planted_feature) = p.planted_effect;
    truth.alpha.resize(p.n_teams);
    truth.beta_team.resize(p.n_teams, F);
    for (int t = 0; t < p.n_teams; ++t) {
      truth.team_names.push_back(team_name(t));
      truth.alpha(t) = p.mu_alpha + p.alpha_sd * n01(rng);
      for (int f = 0; f < F; ++f) truth.beta_team(t, f) = truth.beta_pop(f) + p.sigma_beta * n01(rng);
    }
  }

  struct Row {
    std::string team;
    std::string key;
    int team_index;
    Eigen::VectorXd x;
    double y;
  };
  std::vector<Row> rows;
  {
    auto rng = stream(seed, 4);
    std::normal_distribution<double> n01(0.0, 1.0);
    std::exponential_distribution<double> minutes_dist(1.0 / 160.0);
    std::vector<int> pool(static_cast<std::size_t>(p.n_players));
    for (int i = 0; i < p.n_players; ++i) pool[static_cast<std::size_t>(i)] = i;
    for (int t = 0; t < p.n_teams; ++t) {
      std::shuffle(pool.begin(), pool.end(), rng);
      std::vector<int> roster(pool.begin(), pool.begin() + p.roster_size);
      std::sort(roster.begin(), roster.end());
      const double team_offrtg = std::round((p.mu_alpha + 2.0 * n01(rng)) * 10.0) / 10.0;
      std::set<std::vector<int>> seen;
      while (static_cast<int>(seen.size()) < p.lineups_per_team) {
        std::vector<int> pick = roster;
        std::shuffle(pick.begin(), pick.end(), rng);
        pick.resize(lineup::kLineupSize);
        std::sort(pick.begin(), pick.end());
        if (!seen.insert(pick).second) continue;

        LineupRecord rec;
        rec.team = team_name(t);
        rec.season = spec.season;
        std::vector<int> labels;
        for (int i : pick) {
          rec.player_ids.push_back(truth.player_ids[static_cast<std::size_t>(i)]);
          labels.push_back(truth.labels[static_cast<std::size_t>(i)]);
        }
        rec.minutes = std::round((20.0 + minutes_dist(rng)) * 10.0) / 10.0;
        rec.team_offrtg = team_offrtg;
        const Eigen::VectorXd x = lineup::combo_features_2(labels, K);
        const double y = truth.alpha(t) + x.dot(truth.beta_team.row(t).transpose()) + p.epsilon * n01(rng);
        const double w = std::min(1.0, rec.minutes / spec.horizon_minutes);
        rec.offrtg = w >= 1.0 ? y : (y - team_offrtg * (1.0 - w)) / w;
        if (rec.minutes > spec.min_lineup_minutes) rows.push_back({rec.team, rec.key(), t, x, y});
        out.lineups.push_back(std::move(rec));
      }
    }
  }

  std::sort(rows.begin(), rows.end(),
            [](const Row& a, const Row& b) { return std::tie(a.team, a.key) < std::tie(b.team, b.key); });
  out.design.x.resize(static_cast<Eigen::Index>(rows.size()), F);
  out.design.y.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.design.x.row(static_cast<Eigen::Index>(i)) = rows[i].x.transpose();
    out.design.y(static_cast<Eigen::Index>(i)) = rows[i].y;
    out.design.team_index.push_back(rows[i].team_index);
    out.design.row_keys.push_back(rows[i].team + "|" + spec.season + "|" + rows[i].key);
  }
  return out;
}

std::string truth_to_json(const SynthTruth& truth) {
  nlohmann::ordered_json j;
  j["archetypes"] = truth.archetypes;
  nlohmann::ordered_json labels = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < truth.player_ids.size(); ++i) labels[truth.player_ids[i]] = truth.labels[i];
  j["labels"] = labels;
  j["teams"] = truth.team_names;
  j["feature_names"] = truth.feature_names;
  j["planted_feature"] = truth.planted_feature;
  j["planted_effect"] = truth.planted_effect;
  j["beta_pop"] = std::vector<double>(truth.beta_pop.data(), truth.beta_pop.data() + truth.beta_pop.size());
  nlohmann::ordered_json bt = nlohmann::ordered_json::array();
  for (Eigen::Index t = 0; t < truth.beta_team.rows(); ++t) {
    std::vector<double> row(static_cast<std::size_t>(truth.beta_team.cols()));
    for (Eigen::Index f = 0; f < truth.beta_team.cols(); ++f) row[static_cast<std::size_t>(f)] = truth.beta_team(t, f);
    bt.push_back(row);
  }
  j["beta_team"] = bt;
  j["alpha"] = std::vector<double>(truth.alpha.data(), truth.alpha.data() + truth.alpha.size());
  j["sigma_beta"] = truth.sigma_beta;
  j["epsilon"] = truth.epsilon;
  j["mu_alpha"] = truth.mu_alpha;
  return j.dump(2) + "\n";
}

SynthTruth truth_from_json(std::string_view text) {
  SynthTruth t;
  try {
    const auto j = nlohmann::ordered_json::parse(text);
    t.archetypes = j.at("archetypes").get<int>();
    for (const auto& [id, label] : j.at("labels").items()) {
      t.player_ids.push_back(id);
      t.labels.push_back(label.get<int>());
    }
    t.team_names = j.at("teams").get<std::vector<std::string>>();
    t.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    t.planted_feature = j.at("planted_feature").get<int>();
    t.planted_effect = j.at("planted_effect").get<double>();
    const auto bp = j.at("beta_pop").get<std::vector<double>>();
    t.beta_pop = Eigen::Map<const Eigen::VectorXd>(bp.data(), static_cast<Eigen::Index>(bp.size()));
    const auto bt = j.at("beta_team").get<std::vector<std::vector<double>>>();
    t.beta_team.resize(static_cast<Eigen::Index>(bt.size()), static_cast<Eigen::Index>(bp.size()));
    for (std::size_t r = 0; r < bt.size(); ++r) {
      if (bt[r].size() != bp.size()) throw ParseError("truth.json", "beta_team row width mismatch");
      for (std::size_t c = 0; c < bp.size(); ++c) {
        t.beta_team(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = bt[r][c];
      }
    }
    const auto al = j.at("alpha").get<std::vector<double>>();
    t.alpha = Eigen::Map<const Eigen::VectorXd>(al.data(), static_cast<Eigen::Index>(al.size()));
    t.sigma_beta = j.at("sigma_beta").get<double>();
    t.epsilon = j.at("epsilon").get<double>();
    t.mu_alpha = j.at("mu_alpha").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("truth.json", e.what());
  }
  return t;
}

}  // namespace hoopstyle
