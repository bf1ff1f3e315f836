#include <algorithm>
#include <map>
#include <set>

#include <gtest/gtest.h>

#include "cli_harness.hpp"
#include "hoopstyle/util/csv.hpp"
#include "json.hpp"

namespace hcsv = hoopstyle::csv;
using nlohmann::json;

namespace {

const std::string kExe = HOOPSTYLE_CLI_PATH;

std::vector<std::string> column(const hcsv::Table& t, const std::string& name) {
  std::vector<std::string> out;
  const auto c = t.column(name);
  for (const auto& r : t.rows) out.push_back(r[c]);
  return out;
}

// Shared artifacts of one full run; built once for the suite.
class PipelineRun : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    root_ = cli::scratch("pipeline");
    data_ = root_ / "data";
    out_ = root_ / "out";
    std::filesystem::create_directories(data_);
    cfg_ = cli::write_config(root_, cli::small_config());
    const auto s = cli::run(kExe, {"synth", "--config", cfg_.string(), "--out", data_.string()}, root_ / "synth.log");
    synth_exit_ = s.exit_code;
    data_before_ = cli::snapshot(data_);
    const std::string c = cfg_.string(), d = data_.string(), o = out_.string();
    const std::vector<std::vector<std::string>> steps{
        {"features", "--config", c, "--data", d, "--out", o},
        {"cluster-shots", "--config", c, "--data", d, "--out", o},
        {"cluster-roles", "--config", c, "--data", d, "--out", o},
        {"fit", "--config", c, "--data", d, "--out", o, "--mode", "counts5"},
        {"fit", "--config", c, "--data", d, "--out", o, "--mode", "combos2"},
        {"report", "--config", c, "--out", o}};
    for (std::size_t i = 0; i < steps.size(); ++i) {
      exits_.push_back(cli::run(kExe, steps[i], root_ / ("step" + std::to_string(i) + ".log")).exit_code);
    }
  }

  static inline std::filesystem::path root_, data_, out_, cfg_;
  static inline int synth_exit_ = -1;
  static inline std::vector<int> exits_;
  static inline std::map<std::string, std::string> data_before_;
};

}  // namespace

TEST(Cli, SynthWritesTheDataFiles) {
  const auto dir = cli::scratch("synth_files");
  const auto cfg = cli::write_config(dir, cli::small_config());
  const auto r = cli::run(kExe, {"synth", "--config", cfg.string(), "--seed", "7", "--out", (dir / "data").string()},
                          dir / "log");
  ASSERT_EQ(r.exit_code, 0) << r.stderr_text;
  for (const char* f : {"segments.csv", "playtypes.csv", "lineups.csv", "truth.json", "manifest_synth.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / "data" / f)) << f;
  }
  const auto manifest = json::parse(cli::slurp(dir / "data" / "manifest_synth.json"));
  EXPECT_EQ(manifest["seed"], 7);
  EXPECT_EQ(manifest["outputs"].size(), 4u);
}

TEST(Cli, SynthIsByteIdenticalAcrossRuns) {
  const auto dir = cli::scratch("synth_twice");
  const auto cfg = cli::write_config(dir, cli::small_config());
  for (const char* sub : {"a", "b"}) {
    ASSERT_EQ(cli::run(kExe, {"synth", "--config", cfg.string(), "--seed", "7", "--out", (dir / sub).string()},
                       dir / "log")
                  .exit_code,
              0);
  }
  EXPECT_EQ(cli::snapshot(dir / "a"), cli::snapshot(dir / "b"));
  ASSERT_EQ(cli::run(kExe, {"synth", "--config", cfg.string(), "--seed", "8", "--out", (dir / "c").string()},
                     dir / "log")
                .exit_code,
            0);
  EXPECT_NE(cli::slurp(dir / "a" / "segments.csv"), cli::slurp(dir / "c" / "segments.csv"));
}

TEST(Cli, MissingConfigIsAnInputError) {
  const auto dir = cli::scratch("missing_config");
  const auto r = cli::run(kExe, {"synth", "--config", "/nonexistent/cfg.json", "--out", dir.string()}, dir / "log");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.stderr_text.find("/nonexistent/cfg.json"), std::string::npos);
}

TEST(Cli, BadConfigAndFlagsAreInputErrors) {
  const auto dir = cli::scratch("bad_config");
  const auto cfg = cli::write_config(dir, R"({"shots": {"k_min": 0}})");
  EXPECT_EQ(cli::run(kExe, {"synth", "--config", cfg.string(), "--out", dir.string()}, dir / "log").exit_code, 2);
  EXPECT_EQ(cli::run(kExe, {"fit", "--mode", "triples", "--out", dir.string()}, dir / "log").exit_code, 2);
  EXPECT_EQ(cli::run(kExe, {"nonsense"}, dir / "log").exit_code, 2);
}

TEST(Cli, EmptySegmentsFileIsAnInputError) {
  const auto dir = cli::scratch("empty_segments");
  std::ofstream(dir / "segments.csv") << "player_id,t,x,y,ball_held,shot_frame,is_three\n";
  const auto r = cli::run(kExe, {"cluster-shots", "--out", dir.string()}, dir / "log");
  EXPECT_EQ(r.exit_code, 2) << r.stderr_text;
}

TEST(Cli, AllPlayersFilteredIsAnInputError) {
  const auto dir = cli::scratch("filtered_roles");
  const auto cfg = cli::write_config(dir, R"({"roles": {"min_games": 1000}})");
  ASSERT_EQ(cli::run(kExe, {"synth", "--out", dir.string()}, dir / "log").exit_code, 0);
  const auto r = cli::run(kExe, {"cluster-roles", "--config", cfg.string(), "--out", dir.string()}, dir / "log");
  EXPECT_EQ(r.exit_code, 2) << r.stderr_text;
}

TEST(Cli, MissingStageArtifactsAreListed) {
  const auto dir = cli::scratch("report_missing");
  const auto r = cli::run(kExe, {"report", "--out", dir.string()}, dir / "log");
  EXPECT_EQ(r.exit_code, 2);
  for (const char* f : {"assignments.csv", "silhouette_sweep.csv", "predictions.csv", "effects.csv"}) {
    EXPECT_NE(r.stderr_text.find(f), std::string::npos) << f;
  }
}

TEST(Cli, RoleDefaultsAreHonored) {
  const auto dir = cli::scratch("role_defaults");
  ASSERT_EQ(cli::run(kExe, {"synth", "--out", dir.string()}, dir / "log").exit_code, 0);
  const auto r = cli::run(kExe, {"cluster-roles", "--out", dir.string()}, dir / "log");
  ASSERT_EQ(r.exit_code, 0) << r.stderr_text;
  const auto meta = json::parse(cli::slurp(dir / "role_clusters.json"));
  EXPECT_EQ(meta["c"], 10);
  EXPECT_DOUBLE_EQ(meta["q"].get<double>(), 1.2);
  const auto t = hcsv::read_file((dir / "memberships.csv").string());
  EXPECT_TRUE(t.has_column("m_9"));
  EXPECT_FALSE(t.has_column("m_10"));
}

TEST(Cli, ThirteenShotClustersAndTheDefaultMerge) {
  const auto dir = cli::scratch("thirteen");
  const auto cfg = cli::write_config(
      dir, R"({"shots": {"merge_map": "default"}, "synth": {"archetypes": 13, "n_players": 104}})");
  ASSERT_EQ(cli::run(kExe, {"synth", "--config", cfg.string(), "--out", dir.string()}, dir / "log").exit_code, 0);
  const auto r = cli::run(kExe, {"cluster-shots", "--config", cfg.string(), "--out", dir.string()}, dir / "log");
  ASSERT_EQ(r.exit_code, 0) << r.stderr_text;
  const auto t = hcsv::read_file((dir / "assignments.csv").string());
  const auto src = column(t, "source_cluster");
  EXPECT_EQ(std::set<std::string>(src.begin(), src.end()).size(), 13u);
  const auto names = column(t, "cluster_name");
  const std::set<std::string> merged(names.begin(), names.end());
  EXPECT_EQ(merged, (std::set<std::string>{"Close-range", "Mid-range", "All-rounder", "Ball-handler",
                                           "3point-shooter"}));
  EXPECT_TRUE(std::filesystem::exists(dir / "merge_map.json"));
}

TEST(Cli, ThreadCountDoesNotChangeArtifacts) {
  const auto dir = cli::scratch("threads");
  ASSERT_EQ(cli::run(kExe, {"synth", "--out", (dir / "data").string()}, dir / "log").exit_code, 0);
  for (const char* t : {"1", "3"}) {
    const auto out = dir / (std::string("out") + t);
    ASSERT_EQ(cli::run(kExe, {"cluster-shots", "--data", (dir / "data").string(), "--out", out.string(),
                              "--threads", t},
                       dir / "log")
                  .exit_code,
              0);
  }
  EXPECT_EQ(cli::slurp(dir / "out1" / "distance_matrix.csv"), cli::slurp(dir / "out3" / "distance_matrix.csv"));
  EXPECT_EQ(cli::slurp(dir / "out1" / "assignments.csv"), cli::slurp(dir / "out3" / "assignments.csv"));
}

TEST(Cli, NonConvergedFitNeedsForce) {
  const auto dir = cli::scratch("force");
  const auto cfg = cli::write_config(
      dir, cli::small_config(200, 100, R"("rhat_threshold": 1.0000001, "max_divergent_fraction": 0)"));
  const std::string c = cfg.string(), o = dir.string();
  for (const char* sub : {"synth", "cluster-shots"}) {
    ASSERT_EQ(cli::run(kExe, {sub, "--config", c, "--out", o}, dir / "log").exit_code, 0) << sub;
  }
  const auto refused = cli::run(kExe, {"fit", "--config", c, "--out", o}, dir / "log");
  EXPECT_EQ(refused.exit_code, 3) << refused.stderr_text;
  EXPECT_FALSE(std::filesystem::exists(dir / "effects.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "diagnostics.json"));
  EXPECT_FALSE(json::parse(cli::slurp(dir / "diagnostics.json"))["converged"].get<bool>());

  const auto forced = cli::run(kExe, {"fit", "--config", c, "--out", o, "--force"}, dir / "log");
  EXPECT_EQ(forced.exit_code, 0) << forced.stderr_text;
  const auto t = hcsv::read_file((dir / "effects.csv").string());
  for (const auto& v : column(t, "fit_converged")) EXPECT_EQ(v, "false");
  EXPECT_NE(forced.stderr_text.find("WARNING"), std::string::npos);
}

TEST_F(PipelineRun, EveryStageSucceeds) {
  ASSERT_EQ(synth_exit_, 0);
  ASSERT_EQ(exits_.size(), 6u);
  for (std::size_t i = 0; i < exits_.size(); ++i) {
    EXPECT_EQ(exits_[i], 0) << "step " << i << ": " << cli::slurp(root_ / ("step" + std::to_string(i) + ".log"));
  }
}

TEST_F(PipelineRun, InputDirectoryIsUntouched) { EXPECT_EQ(cli::snapshot(data_), data_before_); }

TEST_F(PipelineRun, SilhouettePicksThreeAndClustersMatchArchetypes) {
  const auto meta = json::parse(cli::slurp(out_ / "shot_clusters.json"));
  EXPECT_EQ(meta["silhouette_argmax"], 3);
  const auto truth = json::parse(cli::slurp(data_ / "truth.json"));
  const auto t = hcsv::read_file((out_ / "assignments.csv").string());
  const auto ids = column(t, "player_id");
  const auto cl = column(t, "cluster");
  std::map<int, std::set<std::string>> by_archetype;
  for (std::size_t i = 0; i < ids.size(); ++i) by_archetype[truth["labels"][ids[i]].get<int>()].insert(cl[i]);
  for (const auto& [a, s] : by_archetype) EXPECT_EQ(s.size(), 1u) << "archetype " << a;
}

TEST_F(PipelineRun, EffectsRankThePlantedPairFirst) {
  const auto truth = json::parse(cli::slurp(data_ / "truth.json"));
  const auto t = hcsv::read_file((out_ / "assignments.csv").string());
  const auto ids = column(t, "player_id");
  const auto cl = column(t, "cluster");
  std::map<int, int> cluster_of;
  for (std::size_t i = 0; i < ids.size(); ++i) cluster_of[truth["labels"][ids[i]].get<int>()] = std::stoi(cl[i]);
  const auto planted = truth["feature_names"][truth["planted_feature"].get<int>()].get<std::string>();
  const int a = std::stoi(planted.substr(6, 1)), b = std::stoi(planted.substr(8, 1));
  const int ca = std::min(cluster_of[a], cluster_of[b]), cb = std::max(cluster_of[a], cluster_of[b]);
  const auto e = hcsv::read_file((out_ / "effects.csv").string());
  EXPECT_EQ(e.rows[0][e.column("rank")], "1");
  EXPECT_EQ(e.rows[0][e.column("feature")], "combo_" + std::to_string(ca) + "_" + std::to_string(cb));
  EXPECT_EQ(e.rows[0][e.column("fit_converged")], "true");
}

TEST_F(PipelineRun, BaselineMetricsSchema) {
  const auto m = json::parse(cli::slurp(out_ / "metrics.json"));
  for (const char* k : {"rmse", "mae", "nll"}) {
    ASSERT_TRUE(m.contains(k)) << k;
    EXPECT_TRUE(m[k].is_number());
  }
  EXPECT_EQ(m["folds"].size(), 6u);
}

TEST_F(PipelineRun, MembershipsAndHistogram) {
  const auto t = hcsv::read_file((out_ / "memberships.csv").string());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    double s = 0.0;
    for (int k = 0; k < 3; ++k) s += hcsv::to_double(t, r, t.column("m_" + std::to_string(k)));
    EXPECT_NEAR(s, 1.0, 1e-9);
  }
  const auto h = hcsv::read_file((out_ / "membership_histogram.csv").string());
  ASSERT_EQ(h.rows.size(), 10u);
  EXPECT_EQ(hcsv::to_double(h, 0, h.column("lower")), 0.0);
  EXPECT_EQ(hcsv::to_double(h, 9, h.column("upper")), 1.0);
  for (std::size_t r = 1; r < 10; ++r) {
    EXPECT_EQ(hcsv::to_double(h, r, h.column("lower")), hcsv::to_double(h, r - 1, h.column("upper")));
  }
  long total = 0;
  for (std::size_t r = 0; r < 10; ++r) total += hcsv::to_int(h, r, h.column("players"));
  EXPECT_EQ(total, static_cast<long>(t.rows.size()));
}

TEST_F(PipelineRun, ReportSectionsAndIdempotence) {
  const std::string report = cli::slurp(out_ / "report.md");
  for (const char* s : {"## Cluster sizes", "## Silhouette sweep", "## Top lineups", "## Bottom lineups",
                        "## Pairwise combination effects"}) {
    EXPECT_NE(report.find(s), std::string::npos) << s;
  }
  // Effect table rows come out in descending median order.
  const auto at = report.find("## Pairwise combination effects");
  std::istringstream in(report.substr(at));
  std::string line;
  std::vector<double> medians;
  while (std::getline(in, line)) {
    if (line.rfind("| ", 0) != 0 || line.find("rank") != std::string::npos) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, '|')) cells.push_back(cell);
    medians.push_back(std::stod(cells[3]));
  }
  EXPECT_EQ(medians.size(), 6u);
  EXPECT_TRUE(std::is_sorted(medians.rbegin(), medians.rend()));

  const auto again = cli::run(kExe, {"report", "--config", cfg_.string(), "--out", out_.string()}, root_ / "again.log");
  ASSERT_EQ(again.exit_code, 0);
  EXPECT_EQ(cli::slurp(out_ / "report.md"), report);
}

TEST_F(PipelineRun, SecondRunIsByteIdentical) {
  const auto dir = cli::scratch("pipeline_again");
  const auto results = cli::full_pipeline(kExe, cfg_, dir, dir.parent_path());
  for (const auto& r : results) ASSERT_EQ(r.exit_code, 0) << r.stderr_text;
  auto first = cli::snapshot(data_);
  for (auto& [k, v] : cli::snapshot(out_)) first[k] = v;
  EXPECT_EQ(cli::snapshot(dir), first);
}
