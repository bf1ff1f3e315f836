#include "hoopstyle/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>

#include "hoopstyle/clustering/fcm.hpp"
#include "hoopstyle/clustering/silhouette.hpp"
#include "hoopstyle/clustering/ward.hpp"
#include "hoopstyle/core/config.hpp"
#include "hoopstyle/core/io.hpp"
#include "hoopstyle/core/synth.hpp"
#include "hoopstyle/core/validate.hpp"
#include "hoopstyle/features/pca.hpp"
#include "hoopstyle/features/roles.hpp"
#include "hoopstyle/features/shot_features.hpp"
#include "hoopstyle/inference/baseline.hpp"
#include "hoopstyle/inference/effects.hpp"
#include "hoopstyle/inference/model.hpp"
#include "hoopstyle/inference/nuts.hpp"
#include "hoopstyle/inference/rhat.hpp"
#include "hoopstyle/lineup/design.hpp"
#include "hoopstyle/lineup/merge.hpp"
#include "hoopstyle/manifest.hpp"
#include "hoopstyle/transport/distance_matrix.hpp"
#include "hoopstyle/util/csv.hpp"
#include "json.hpp"

namespace hoopstyle::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

void log(const std::string& msg) { std::cerr << "hoopstyle: " << msg << "\n"; }

struct Context {
  PipelineConfig config;
  std::string config_json;
  std::uint64_t seed = 0;
  int threads = 1;
  fs::path out;
  fs::path data;
};

Context make_context(const Options& o) {
  Context c;
  if (!o.config_path.empty()) {
    if (!fs::exists(o.config_path)) throw ConfigError("config file not found: " + o.config_path);
    c.config = load_config(o.config_path);
  }
  if (o.seed) c.config.seed = *o.seed;
  if (o.threads) {
    if (*o.threads < 1) throw ConfigError("--threads must be >= 1");
    c.config.threads = *o.threads;
  }
  c.config_json = config_to_json(c.config);
  c.seed = c.config.seed;
  c.threads = c.config.threads;
  c.out = o.out_dir;
  c.data = o.data_dir.empty() ? c.out : fs::path(o.data_dir);
  fs::create_directories(c.out);
  return c;
}

fs::path require(const fs::path& path) {
  if (!fs::exists(path)) throw DataError("missing input file: " + path.string());
  return path;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(require(path), std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Writes through a callback, then records the file in the manifest.
template <class Fn>
void write_file(RunManifest& m, const fs::path& path, Fn&& fn) {
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    fn(out);
  }
  m.add_output(path);
}

void write_json(RunManifest& m, const fs::path& path, const ordered_json& j) {
  write_file(m, path, [&](std::ostream& out) { out << j.dump(2) << "\n"; });
}

void check(const ValidationReport& report, const std::string& what) {
  if (!report.accepted()) throw DataError(what + " failed validation:\n" + report.summary());
}

std::vector<ShotSegment> load_segments(const Context& c, RunManifest& m) {
  const auto path = require(c.data / "segments.csv");
  m.add_input(path);
  auto segments = io::read_segments_file(path.string());
  if (segments.empty()) throw DataError(path.string() + " contains no shot segments");
  check(validate_dataset(segments, {}, {}), path.string());
  return segments;
}

std::vector<PlaytypeProfile> load_profiles(const Context& c, RunManifest& m) {
  const auto path = require(c.data / "playtypes.csv");
  m.add_input(path);
  auto profiles = io::read_profiles_file(path.string());
  check(validate_dataset({}, profiles, {}), path.string());
  return profiles;
}

void write_features(std::ostream& out, const std::vector<ShotSegment>& segments,
                    const Eigen::MatrixXd& f) {
  std::vector<std::string> header{"player_id"};
  for (auto n : features::kShotFeatureNames) header.emplace_back(n);
  csv::write_row(out, header);
  for (Eigen::Index i = 0; i < f.rows(); ++i) {
    std::vector<std::string> row{segments[static_cast<std::size_t>(i)].player_id};
    for (Eigen::Index j = 0; j < f.cols(); ++j) row.push_back(csv::format(f(i, j)));
    csv::write_row(out, row);
  }
}

struct ShotStage {
  Eigen::MatrixXd features;
  features::PcaModel pca;
  Eigen::MatrixXd scores;
};

ShotStage shot_stage(const Context& c, const std::vector<ShotSegment>& segments, RunManifest& m) {
  ShotStage s;
  s.features = features::extract_feature_matrix(segments, c.config.features.rim);
  s.pca = features::fit_standardize_pca(s.features, c.config.features.pca_variance_target);
  s.scores = features::pca_transform(s.pca, s.features);
  write_file(m, c.out / "features.csv",
             [&](std::ostream& out) { write_features(out, segments, s.features); });
  write_file(m, c.out / "pca_model.json",
             [&](std::ostream& out) { out << features::pca_to_json(s.pca); });
  log("PCA kept " + std::to_string(s.pca.output_dim()) + " of " +
      std::to_string(s.pca.input_dim()) + " dimensions");
  return s;
}

std::vector<features::RoleFeatureRow> role_stage(const Context& c,
                                                 const std::vector<PlaytypeProfile>& profiles,
                                                 RunManifest& m) {
  features::RoleFeatureOptions ro;
  ro.min_games = c.config.roles.min_games;
  ro.max_missing_fraction = c.config.roles.max_missing_fraction;
  auto rows = features::build_role_features(profiles, ro);
  if (rows.size() < profiles.size()) {
    log("excluded " + std::to_string(profiles.size() - rows.size()) +
        " player(s) by games played or missing playtypes");
  }
  if (rows.empty()) throw DataError("every player was filtered out of the role analysis");
  write_file(m, c.out / "role_features.csv", [&](std::ostream& out) {
    std::vector<std::string> header{"player_id"};
    for (auto k : kMergedPlaytypeKeys) header.emplace_back(k);
    header.push_back("ast_pct");
    header.push_back("usg_pct");
    csv::write_row(out, header);
    for (const auto& [id, v] : rows) {
      std::vector<std::string> row{id};
      for (double p : v.playtype_pct) row.push_back(csv::format(p));
      row.push_back(csv::format(v.ast_pct));
      row.push_back(csv::format(v.usg_pct));
      csv::write_row(out, row);
    }
  });
  return rows;
}

lineup::MergeMap resolve_merge_map(const Context& c, int k) {
  const std::string& spec = c.config.shots.merge_map;
  if (spec.empty()) {
    lineup::MergeMap m = lineup::identity_merge_map(k);
    for (int i = 0; i < k; ++i) m.target_names[static_cast<std::size_t>(i)] = "cluster_" + std::to_string(i);
    return m;
  }
  lineup::MergeMap m =
      spec == "default" ? lineup::default_shot_merge_map() : lineup::merge_map_from_json(read_text(spec));
  if (m.n_source() != k) {
    throw ConfigError("merge map covers " + std::to_string(m.n_source()) +
                      " clusters but n_shot_clusters is " + std::to_string(k));
  }
  return m;
}

}  // namespace

void cmd_synth(const Options& o) {
  const Context c = make_context(o);
  RunManifest m("synth", c.seed, c.config_json);
  const SynthDataset ds = synthesize_dataset(SynthSpec::from_config(c.config), c.seed);
  check(validate_dataset(ds.segments, ds.profiles, ds.lineups), "synthetic dataset");
  write_file(m, c.out / "segments.csv", [&](std::ostream& out) { io::write_segments(out, ds.segments); });
  write_file(m, c.out / "playtypes.csv", [&](std::ostream& out) { io::write_profiles(out, ds.profiles); });
  write_file(m, c.out / "lineups.csv", [&](std::ostream& out) { io::write_lineups(out, ds.lineups); });
  write_file(m, c.out / "truth.json", [&](std::ostream& out) { out << truth_to_json(ds.truth); });
  m.write(c.out);
  log("wrote " + std::to_string(ds.segments.size()) + " segments, " +
      std::to_string(ds.profiles.size()) + " profiles, " + std::to_string(ds.lineups.size()) +
      " lineups");
}

void cmd_features(const Options& o) {
  const Context c = make_context(o);
  RunManifest m("features", c.seed, c.config_json);
  const auto segments = load_segments(c, m);
  shot_stage(c, segments, m);
  const auto profiles = load_profiles(c, m);
  role_stage(c, profiles, m);
  m.write(c.out);
}

void cmd_cluster_shots(const Options& o) {
  const Context c = make_context(o);
  const auto& sc = c.config.shots;
  RunManifest m("cluster-shots", c.seed, c.config_json);
  const auto segments = load_segments(c, m);
  const ShotStage s = shot_stage(c, segments, m);

  std::map<std::string, std::vector<Eigen::Index>> by_player;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    by_player[segments[i].player_id].push_back(static_cast<Eigen::Index>(i));
  }
  std::vector<transport::LabeledDistribution> players;
  for (const auto& [id, rows] : by_player) {
    if (static_cast<int>(rows.size()) < sc.min_shots_per_player) {
      log("excluded player " + id + ": " + std::to_string(rows.size()) + " shots (< " +
          std::to_string(sc.min_shots_per_player) + ")");
      continue;
    }
    Eigen::MatrixXd pts(static_cast<Eigen::Index>(rows.size()), s.scores.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) pts.row(static_cast<Eigen::Index>(r)) = s.scores.row(rows[r]);
    players.emplace_back(id, transport::EmpiricalDistribution::uniform(std::move(pts)));
  }
  if (static_cast<int>(players.size()) < std::max(2, sc.k_min)) {
    throw DataError("only " + std::to_string(players.size()) + " player(s) meet the shot minimum");
  }
  if (sc.n_shot_clusters > static_cast<int>(players.size())) {
    throw ConfigError("n_shot_clusters (" + std::to_string(sc.n_shot_clusters) +
                      ") exceeds the number of eligible players (" + std::to_string(players.size()) + ")");
  }

  transport::PairwiseOptions po;
  po.p = sc.wasserstein_p;
  po.threads = c.threads;
  po.min_support = sc.min_shots_per_player;
  log("computing " + std::to_string(players.size() * (players.size() - 1) / 2) + " transport problems");
  const auto dm = transport::pairwise_distance_matrix(players, po);
  write_file(m, c.out / "distance_matrix.csv", [&](std::ostream& out) { transport::write_distance_matrix(out, dm); });

  const auto dendro = clustering::ward_linkage(dm);
  write_file(m, c.out / "dendrogram.json", [&](std::ostream& out) { out << clustering::dendrogram_to_json(dendro); });

  const auto sweep = clustering::silhouette_sweep(dm, dendro, sc.k_min, sc.k_max);
  write_file(m, c.out / "silhouette_sweep.csv", [&](std::ostream& out) {
    csv::write_row(out, {"k", "mean_silhouette"});
    for (const auto& p : sweep) csv::write_row(out, {std::to_string(p.k), csv::format(p.mean)});
  });
  const int best_k = clustering::silhouette_argmax(sweep);
  log("silhouette sweep peaks at k = " + std::to_string(best_k));

  const auto assignment = clustering::cut_dendrogram(dendro, sc.n_shot_clusters);
  const auto merge = resolve_merge_map(c, sc.n_shot_clusters);
  const auto merged = lineup::merge_clusters(assignment, merge);
  if (!sc.merge_map.empty()) {
    write_file(m, c.out / "merge_map.json", [&](std::ostream& out) { out << lineup::merge_map_to_json(merge); });
  }
  write_file(m, c.out / "assignments.csv", [&](std::ostream& out) {
    csv::write_row(out, {"player_id", "source_cluster", "cluster", "cluster_name"});
    for (std::size_t i = 0; i < players.size(); ++i) {
      const int l = merged.labels[i];
      csv::write_row(out, {players[i].first, std::to_string(assignment.labels[i]), std::to_string(l),
                           merge.target_names[static_cast<std::size_t>(l)]});
    }
  });
  ordered_json meta;
  meta["k_source"] = sc.n_shot_clusters;
  meta["k"] = merge.n_target();
  meta["names"] = merge.target_names;
  meta["silhouette_argmax"] = best_k;
  meta["pca_dims"] = s.pca.output_dim();
  write_json(m, c.out / "shot_clusters.json", meta);
  m.write(c.out);
}

void cmd_cluster_roles(const Options& o) {
  const Context c = make_context(o);
  const auto& rc = c.config.roles;
  RunManifest m("cluster-roles", c.seed, c.config_json);
  const auto profiles = load_profiles(c, m);
  const auto rows = role_stage(c, profiles, m);
  Eigen::MatrixXd x = features::role_feature_matrix(rows);
  if (rc.standardize) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      const double mean = x.col(j).mean();
      const double sd = std::sqrt((x.col(j).array() - mean).square().sum() / std::max<Eigen::Index>(1, x.rows() - 1));
      x.col(j).array() -= mean;
      if (sd > 0.0) x.col(j) /= sd;
    }
  }
  if (x.rows() < rc.n_role_clusters) {
    throw DataError("only " + std::to_string(x.rows()) + " eligible players for " +
                    std::to_string(rc.n_role_clusters) + " role clusters");
  }
  clustering::FcmOptions fo;
  fo.q = rc.fuzzifier_q;
  fo.tol = rc.tol;
  fo.max_iter = rc.max_iter;
  const auto fit = clustering::fuzzy_cmeans(x, rc.n_role_clusters, c.seed, fo);
  fit.membership.validate();
  if (!fit.converged) log("fuzzy c-means stopped at max_iter before reaching tol");

  const auto& u = fit.membership.u;
  const auto arg = fit.membership.argmax();
  const Eigen::VectorXd mx = fit.membership.max_membership();
  write_file(m, c.out / "memberships.csv", [&](std::ostream& out) {
    std::vector<std::string> header{"player_id"};
    for (Eigen::Index k = 0; k < u.cols(); ++k) header.push_back("m_" + std::to_string(k));
    header.push_back("argmax");
    header.push_back("max_membership");
    csv::write_row(out, header);
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      std::vector<std::string> row{rows[static_cast<std::size_t>(i)].first};
      for (Eigen::Index k = 0; k < u.cols(); ++k) row.push_back(csv::format(u(i, k)));
      row.push_back(std::to_string(arg[static_cast<std::size_t>(i)]));
      row.push_back(csv::format(mx(i)));
      csv::write_row(out, row);
    }
  });
  std::vector<int> buckets(10, 0);
  for (Eigen::Index i = 0; i < mx.size(); ++i) {
    ++buckets[static_cast<std::size_t>(std::clamp(static_cast<int>(mx(i) * 10.0), 0, 9))];
  }
  write_file(m, c.out / "membership_histogram.csv", [&](std::ostream& out) {
    csv::write_row(out, {"lower", "upper", "players"});
    for (int b = 0; b < 10; ++b) {
      csv::write_row(out, {csv::format(b / 10.0), csv::format((b + 1) / 10.0),
                           std::to_string(buckets[static_cast<std::size_t>(b)])});
    }
  });
  ordered_json meta;
  meta["c"] = rc.n_role_clusters;
  meta["q"] = rc.fuzzifier_q;
  meta["iterations"] = fit.iterations;
  meta["converged"] = fit.converged;
  meta["objective"] = fit.objective_history.back();
  std::vector<std::string> names;
  for (int k = 0; k < rc.n_role_clusters; ++k) names.push_back("role_" + std::to_string(k));
  meta["names"] = names;
  meta["membership_threshold"] = rc.membership_threshold;
  meta["players_above_threshold"] = (mx.array() >= rc.membership_threshold).count();
  write_json(m, c.out / "role_clusters.json", meta);
  m.write(c.out);
}

namespace {

lineup::PlayerClusters load_clusters(const Context& c, const std::string& source, RunManifest& m) {
  if (source == "shots") {
    const auto path = require(c.out / "assignments.csv");
    const auto meta_path = require(c.out / "shot_clusters.json");
    m.add_input(path);
    m.add_input(meta_path);
    const auto meta = nlohmann::json::parse(read_text(meta_path));
    const auto t = csv::read_file(path.string());
    std::vector<std::string> ids;
    std::vector<int> labels;
    const auto id_col = t.column("player_id");
    const auto cl_col = t.column("cluster");
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      ids.push_back(t.rows[r][id_col]);
      labels.push_back(static_cast<int>(csv::to_int(t, r, cl_col)));
    }
    auto pc = lineup::PlayerClusters::from_labels(ids, labels, meta.at("k").get<int>());
    pc.cluster_names = meta.at("names").get<std::vector<std::string>>();
    return pc;
  }
  if (source == "roles") {
    const auto path = require(c.out / "memberships.csv");
    m.add_input(path);
    const auto t = csv::read_file(path.string());
    std::vector<std::size_t> cols;
    for (int k = 0;; ++k) {
      const std::string name = "m_" + std::to_string(k);
      if (!t.has_column(name)) break;
      cols.push_back(t.column(name));
    }
    if (cols.empty()) throw ParseError(path.string(), "no membership columns");
    Eigen::MatrixXd u(static_cast<Eigen::Index>(t.rows.size()), static_cast<Eigen::Index>(cols.size()));
    std::vector<std::string> ids;
    const auto id_col = t.column("player_id");
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
      ids.push_back(t.rows[r][id_col]);
      for (std::size_t k = 0; k < cols.size(); ++k) {
        u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = csv::to_double(t, r, cols[k]);
      }
    }
    auto pc = lineup::PlayerClusters::from_memberships(ids, u);
    for (std::size_t k = 0; k < cols.size(); ++k) pc.cluster_names.push_back("role_" + std::to_string(k));
    return pc;
  }
  throw ConfigError("unknown --source '" + source + "' (expected shots or roles)");
}

lineup::Design design_stage(const Context& c, const Options& o, RunManifest& m) {
  const auto clusters = load_clusters(c, o.source, m);
  const auto path = require(c.data / "lineups.csv");
  m.add_input(path);
  const auto lineups = io::read_lineups_file(path.string());
  check(validate_dataset({}, {}, lineups), path.string());
  lineup::DesignOptions dopt;
  dopt.mode = lineup::parse_design_mode(o.mode);
  dopt.min_minutes = c.config.lineups.min_lineup_minutes;
  dopt.horizon = c.config.lineups.adjust_horizon_minutes;
  auto d = lineup::build_design(lineups, clusters, dopt);
  if (d.x.rows() == 0) throw DataError("no lineups above the minutes threshold");
  write_file(m, c.out / "design.csv", [&](std::ostream& out) { lineup::write_design(out, d); });
  log("design: " + std::to_string(d.x.rows()) + " lineups x " + std::to_string(d.x.cols()) +
      " features over " + std::to_string(d.team_names.size()) + " teams");
  return d;
}

ordered_json number_or_string(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

}  // namespace

void cmd_build_design(const Options& o) {
  const Context c = make_context(o);
  RunManifest m("build-design", c.seed, c.config_json);
  design_stage(c, o, m);
  m.write(c.out);
}

void cmd_fit(const Options& o) {
  const Context c = make_context(o);
  RunManifest m("fit", c.seed, c.config_json);
  const lineup::Design d = design_stage(c, o, m);

  if (lineup::parse_design_mode(o.mode) == lineup::DesignMode::kCounts5) {
    const auto report = inference::leave_one_team_out(d.x, d.y, d.team_index);
    ordered_json j;
    j["rmse"] = report.rmse;
    j["mae"] = report.mae;
    j["nll"] = report.nll;
    j["n_folds"] = report.folds.size();
    ordered_json folds = ordered_json::array();
    for (const auto& f : report.folds) {
      folds.push_back({{"team", d.team_names[static_cast<std::size_t>(f.fold_team)]},
                       {"rows", f.rows.size()},
                       {"rmse", f.rmse},
                       {"mae", f.mae},
                       {"nll", f.nll},
                       {"lambda", f.lambda}});
    }
    j["folds"] = folds;
    write_json(m, c.out / "metrics.json", j);
    std::vector<double> sd(static_cast<std::size_t>(d.y.size()));
    for (const auto& f : report.folds) {
      for (int r : f.rows) sd[static_cast<std::size_t>(r)] = f.predictive_sd;
    }
    write_file(m, c.out / "predictions.csv", [&](std::ostream& out) {
      std::vector<std::string> header{"lineup_key", "team"};
      header.insert(header.end(), d.feature_labels.begin(), d.feature_labels.end());
      header.insert(header.end(), {"y", "predicted", "predictive_sd"});
      csv::write_row(out, header);
      for (Eigen::Index r = 0; r < d.y.size(); ++r) {
        const auto ri = static_cast<std::size_t>(r);
        std::vector<std::string> row{d.row_keys[ri], d.team_names[static_cast<std::size_t>(d.team_index[ri])]};
        for (Eigen::Index k = 0; k < d.x.cols(); ++k) row.push_back(csv::format(d.x(r, k)));
        row.push_back(csv::format(d.y(r)));
        row.push_back(csv::format(report.out_of_fold(r)));
        row.push_back(csv::format(sd[ri]));
        csv::write_row(out, row);
      }
    });
    log("leave-one-team-out: rmse " + csv::format(report.rmse) + ", mae " + csv::format(report.mae) +
        ", nll " + csv::format(report.nll));
    m.write(c.out);
    return;
  }

  const auto& ic = c.config.inference;
  inference::HierarchicalModelSpec spec;
  spec.n_teams = static_cast<int>(d.team_names.size());
  spec.n_features = static_cast<int>(d.x.cols());
  spec.mu_alpha = o.source == "roles" ? ic.mu_alpha_roles : ic.mu_alpha_shots;
  spec.alpha_sd = ic.alpha_sd;
  spec.mu_beta_sd = ic.mu_beta_sd;
  spec.sigma_beta_scale = ic.sigma_beta_scale;
  spec.epsilon_scale = ic.epsilon_scale;
  spec.per_feature_sigma_beta = ic.per_feature_sigma_beta;
  spec.non_centered = ic.non_centered;
  const inference::HierarchicalModel model(spec, d.x, d.y, d.team_index);

  inference::NutsOptions no;
  no.chains = c.config.mcmc.chains;
  no.warmup = c.config.mcmc.warmup;
  no.draws = c.config.mcmc.draws;
  no.seed = o.seed ? *o.seed : c.config.mcmc.seed;
  no.target_accept = c.config.mcmc.target_accept;
  no.max_tree_depth = c.config.mcmc.max_tree_depth;
  no.threads = c.threads;
  log("sampling " + std::to_string(model.dim()) + " parameters, " + std::to_string(no.chains) +
      " chains x " + std::to_string(no.draws) + " draws");
  const auto samples = inference::nuts_sample(model, no);
  const auto rhat = inference::split_rhat(samples, ic.rhat_threshold);
  const double div_frac = samples.divergent_fraction();
  const bool converged = rhat.converged && div_frac <= ic.max_divergent_fraction;

  ordered_json diag;
  diag["converged"] = converged;
  diag["rhat_threshold"] = ic.rhat_threshold;
  diag["rhat_max"] = number_or_string(rhat.max);
  diag["rhat_argmax"] = samples.names[static_cast<std::size_t>(rhat.argmax)];
  diag["divergent_fraction"] = div_frac;
  diag["max_divergent_fraction"] = ic.max_divergent_fraction;
  ordered_json chains = ordered_json::array();
  for (const auto& cd : samples.diagnostics) {
    chains.push_back({{"step_size", cd.step_size},
                      {"divergences", cd.divergences},
                      {"max_depth_hits", cd.max_depth_hits},
                      {"mean_accept_stat", cd.mean_accept_stat}});
  }
  diag["chains"] = chains;
  ordered_json per = ordered_json::object();
  for (std::size_t p = 0; p < samples.names.size(); ++p) per[samples.names[p]] = number_or_string(rhat.per_parameter[p]);
  diag["rhat"] = per;
  write_json(m, c.out / "diagnostics.json", diag);
  log("max split R-hat " + csv::format(rhat.max) + " (" + samples.names[static_cast<std::size_t>(rhat.argmax)] +
      "), divergent fraction " + csv::format(div_frac));

  if (!converged && !o.force) {
    m.write(c.out);
    throw ConvergenceFailure("fit did not converge (max R-hat " + csv::format(rhat.max) +
                             ", divergent fraction " + csv::format(div_frac) +
                             "); see diagnostics.json or rerun with --force");
  }
  if (!converged) log("WARNING: writing effects from a non-converged fit (--force)");

  write_file(m, c.out / "posterior_draws.csv", [&](std::ostream& out) {
    csv::write_row(out, {"chain", "iter", "param", "value"});
    for (int ch = 0; ch < samples.n_chains(); ++ch) {
      const auto& draws = samples.chains[static_cast<std::size_t>(ch)];
      for (Eigen::Index it = 0; it < draws.rows(); ++it) {
        for (Eigen::Index p = 0; p < draws.cols(); ++p) {
          csv::write_row(out, {std::to_string(ch), std::to_string(it), samples.names[static_cast<std::size_t>(p)],
                               csv::format(draws(it, p))});
        }
      }
    }
  });
  const auto table = inference::effect_table(samples, model.layout(), d.feature_names, d.feature_labels, converged);
  write_file(m, c.out / "effects.csv", [&](std::ostream& out) { inference::write_effects(out, table, d.team_names); });
  const int top = table.order_by_median().front();
  log("top effect: " + table.rows[static_cast<std::size_t>(top)].label + " (median " +
      csv::format(table.rows[static_cast<std::size_t>(top)].median) + ")");
  m.write(c.out);
}

namespace {

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void table_row(std::ostream& out, const std::vector<std::string>& cells) {
  out << "|";
  for (const auto& c : cells) out << " " << c << " |";
  out << "\n";
}

void table_rule(std::ostream& out, std::size_t n) {
  out << "|";
  for (std::size_t i = 0; i < n; ++i) out << "---|";
  out << "\n";
}

}  // namespace

void cmd_report(const Options& o) {
  const Context c = make_context(o);
  RunManifest m("report", c.seed, c.config_json);
  const std::vector<std::string> needed{"assignments.csv", "silhouette_sweep.csv", "predictions.csv", "effects.csv"};
  std::vector<std::string> missing;
  for (const auto& f : needed) {
    if (!fs::exists(c.out / f)) missing.push_back(f);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& f : missing) list += "\n  " + (c.out / f).string();
    throw DataError("report needs artifacts from earlier stages; missing:" + list);
  }
  for (const auto& f : needed) m.add_input(c.out / f);

  const auto assignments = csv::read_file((c.out / "assignments.csv").string());
  const auto sweep = csv::read_file((c.out / "silhouette_sweep.csv").string());
  const auto predictions = csv::read_file((c.out / "predictions.csv").string());
  const auto effects = csv::read_file((c.out / "effects.csv").string());

  write_file(m, c.out / "report.md", [&](std::ostream& out) {
    out << "# Lineup style report\n\n";

    out << "## Cluster sizes\n\n";
    std::map<std::string, int> sizes;
    const auto name_col = assignments.column("cluster_name");
    for (const auto& row : assignments.rows) ++sizes[row[name_col]];
    std::vector<std::pair<std::string, int>> sorted(sizes.begin(), sizes.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    table_row(out, {"cluster", "players"});
    table_rule(out, 2);
    for (const auto& [name, n] : sorted) table_row(out, {name, std::to_string(n)});

    out << "\n## Silhouette sweep\n\n";
    table_row(out, {"k", "mean silhouette"});
    table_rule(out, 2);
    const auto k_col = sweep.column("k");
    const auto s_col = sweep.column("mean_silhouette");
    int best_k = 0;
    double best = -2.0;
    for (std::size_t r = 0; r < sweep.rows.size(); ++r) {
      const double v = csv::to_double(sweep, r, s_col);
      if (v > best) {
        best = v;
        best_k = static_cast<int>(csv::to_int(sweep, r, k_col));
      }
      table_row(out, {sweep.rows[r][k_col], fixed(v)});
    }
    out << "\nHighest mean silhouette at k = " << best_k << ".\n";

    const auto key_col = predictions.column("lineup_key");
    const auto y_col = predictions.column("y");
    const auto p_col = predictions.column("predicted");
    std::vector<std::size_t> order(predictions.rows.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> pred(order.size());
    for (std::size_t r = 0; r < order.size(); ++r) pred[r] = csv::to_double(predictions, r, p_col);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pred[a] > pred[b]; });
    const std::size_t n_show = std::min<std::size_t>(10, order.size());
    auto lineup_table = [&](const std::vector<std::size_t>& rows) {
      table_row(out, {"lineup", "adjusted OFFRTG", "predicted"});
      table_rule(out, 3);
      for (std::size_t r : rows) {
        table_row(out, {predictions.rows[r][key_col], fixed(csv::to_double(predictions, r, y_col), 2),
                        fixed(pred[r], 2)});
      }
    };
    out << "\n## Top lineups by baseline prediction\n\n";
    lineup_table({order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_show)});
    out << "\n## Bottom lineups by baseline prediction\n\n";
    lineup_table({order.rbegin(), order.rbegin() + static_cast<std::ptrdiff_t>(n_show)});

    out << "\n## Pairwise combination effects\n\n";
    const auto pair_col = effects.column("pair");
    const auto med_col = effects.column("median");
    const auto lo_col = effects.column("mu_beta_q05");
    const auto hi_col = effects.column("mu_beta_q95");
    const auto conv_col = effects.column("fit_converged");
    if (!effects.rows.empty() && effects.rows.front()[conv_col] != "true") {
      out << "**WARNING: these effects come from a fit that did not meet the convergence criteria.**\n\n";
    }
    std::vector<std::size_t> eorder(effects.rows.size());
    std::iota(eorder.begin(), eorder.end(), 0);
    std::vector<double> med(eorder.size());
    for (std::size_t r = 0; r < eorder.size(); ++r) med[r] = csv::to_double(effects, r, med_col);
    std::stable_sort(eorder.begin(), eorder.end(), [&](std::size_t a, std::size_t b) { return med[a] > med[b]; });
    table_row(out, {"rank", "pair", "median over teams", "mu_beta 90% interval"});
    table_rule(out, 4);
    int rank = 1;
    for (std::size_t r : eorder) {
      table_row(out, {std::to_string(rank++), effects.rows[r][pair_col], fixed(med[r]),
                      "[" + fixed(csv::to_double(effects, r, lo_col)) + ", " +
                          fixed(csv::to_double(effects, r, hi_col)) + "]"});
    }
  });
  m.write(c.out);
}

}  // namespace hoopstyle::cli
