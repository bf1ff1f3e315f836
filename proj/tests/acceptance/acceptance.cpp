// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: hoopstyle_acceptance [path-to-hoopstyle-cli]

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cli_harness.hpp"
#include "dense_lp.hpp"
#include "gaussian_posterior.hpp"
#include "generators.hpp"
#include "hoopstyle/clustering/fcm.hpp"
#include "hoopstyle/clustering/kmeans.hpp"
#include "hoopstyle/clustering/silhouette.hpp"
#include "hoopstyle/clustering/ward.hpp"
#include "hoopstyle/core/config.hpp"
#include "hoopstyle/core/synth.hpp"
#include "hoopstyle/features/pca.hpp"
#include "hoopstyle/features/shot_features.hpp"
#include "hoopstyle/inference/effects.hpp"
#include "hoopstyle/inference/model.hpp"
#include "hoopstyle/inference/nuts.hpp"
#include "hoopstyle/inference/rhat.hpp"
#include "hoopstyle/lineup/combos.hpp"
#include "hoopstyle/lineup/stats.hpp"
#include "hoopstyle/transport/distance_matrix.hpp"
#include "hoopstyle/transport/emd.hpp"
#include "naive_ward.hpp"

namespace hs = hoopstyle;
namespace hc = hoopstyle::clustering;
namespace hi = hoopstyle::inference;
namespace hl = hoopstyle::lineup;
namespace ht = hoopstyle::transport;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& why) {
    if (!ok) {
      if (pass) detail << "failed: ";
      else detail << "; ";
      detail << why;
      pass = false;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v) {
  char b[48];
  std::snprintf(b, sizeof b, "%.3g", v);
  return b;
}

// 1
void emd_oracle(Outcome& o) {
  const auto t0 = Clock::now();
  gen::Rng rng(1001);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int d = gen::uniform_int(rng, 1, 3);
    const bool uniform = trial % 2 == 0;
    const auto a = gen::distribution(rng, 6, d, uniform);
    const auto b = gen::distribution(rng, 6, d, uniform);
    const double p = trial % 4 == 3 ? 2.0 : 1.0;
    const double cost = ht::solve_emd(a, b, p).cost;
    const double ref = oracle::transport_cost(a.points, a.mass, b.points, b.mass, p);
    worst = std::max(worst, std::abs(cost - ref));
  }
  const double secs = seconds_since(t0);
  o.require(worst <= 1e-8, "max |cost - LP| = " + num(worst));
  o.require(secs < 60.0, "runtime " + num(secs) + " s");
  o.detail << "500 pairs, max |cost - LP| = " << num(worst) << ", " << num(secs) << " s";
}

// 2
void metric_properties(Outcome& o) {
  gen::Rng rng(1002);
  double self = 0.0, triangle_excess = -1e300;
  bool symmetric = true;
  for (int trial = 0; trial < 200; ++trial) {
    const int d = gen::uniform_int(rng, 1, 3);
    const auto a = gen::distribution(rng, 6, d, trial % 2 == 0);
    const auto b = gen::distribution(rng, 6, d, trial % 2 == 0);
    const auto c = gen::distribution(rng, 6, d, trial % 2 == 0);
    const double p = trial % 3 == 0 ? 2.0 : 1.0;
    const double ab = ht::wasserstein_distance(a, b, p);
    symmetric = symmetric && ab == ht::wasserstein_distance(b, a, p);
    self = std::max(self, ht::wasserstein_distance(a, a, p));
    triangle_excess = std::max(triangle_excess,
                               ab - ht::wasserstein_distance(a, c, p) - ht::wasserstein_distance(c, b, p));
  }
  o.require(symmetric, "W(a,b) != W(b,a)");
  o.require(self <= 1e-9, "self-distance " + num(self));
  o.require(triangle_excess <= 1e-7, "triangle excess " + num(triangle_excess));
  o.detail << "200 triples, max self-distance " << num(self) << ", max triangle excess "
           << num(triangle_excess);
}

// 3
void ward_oracle(Outcome& o) {
  gen::Rng rng(1003);
  int mismatches = 0;
  double worst_height = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = gen::uniform_int(rng, 2, 20);
    const auto dm = gen::euclidean_matrix(gen::points(rng, n, gen::uniform_int(rng, 1, 4)));
    const auto d = hc::ward_linkage(dm);
    const auto ref = oracle::naive_ward(dm.values);
    std::vector<int> low(static_cast<std::size_t>(2 * n - 1));
    for (int i = 0; i < n; ++i) low[static_cast<std::size_t>(i)] = i;
    for (std::size_t t = 0; t < d.merges.size(); ++t) {
      const int a = low[static_cast<std::size_t>(d.merges[t].left)];
      const int b = low[static_cast<std::size_t>(d.merges[t].right)];
      low[static_cast<std::size_t>(n) + t] = std::min(a, b);
      if (a != ref[t].min_a || b != ref[t].min_b || d.merges[t].size != ref[t].size) ++mismatches;
      worst_height = std::max(worst_height, std::abs(d.merges[t].height - ref[t].height) /
                                                std::max(1.0, ref[t].height));
    }
  }
  o.require(mismatches == 0, std::to_string(mismatches) + " merge mismatches");
  o.require(worst_height <= 1e-9, "height error " + num(worst_height));
  o.detail << "50 instances, merge mismatches " << mismatches << ", max rel height error " << num(worst_height);
}

// 4
void silhouette(Outcome& o) {
  Eigen::MatrixXd p(6, 1);
  p << 0, 1, 2, 10, 11, 13;
  const auto dm = gen::euclidean_matrix(p);
  const auto s = hc::silhouette_samples(dm, {{0, 0, 0, 1, 1, 1}, 2});
  const double hand[6] = {1 - 1.5 / (34.0 / 3), 1 - 1.0 / (31.0 / 3), 1 - 1.5 / (28.0 / 3),
                          1 - 2.0 / 9,          1 - 1.5 / 10,         1 - 2.5 / 12};
  double err = 0.0;
  for (int i = 0; i < 6; ++i) err = std::max(err, std::abs(s[static_cast<std::size_t>(i)] - hand[i]));
  o.require(err <= 1e-12, "hand-worked error " + num(err));

  gen::Rng rng(1004);
  bool bounded = true;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = gen::uniform_int(rng, 3, 30);
    const int k = gen::uniform_int(rng, 2, n);
    std::vector<int> labels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = i < k ? i : gen::uniform_int(rng, 0, k - 1);
    for (double v : hc::silhouette_samples(gen::euclidean_matrix(gen::points(rng, n, 3)), {labels, k})) {
      bounded = bounded && v >= -1.0 && v <= 1.0;
    }
  }
  o.require(bounded, "value outside [-1, 1]");

  Eigen::MatrixXd centers(2, 2);
  centers << 0, 0, 100, 0;
  std::vector<int> labels(20, 0);
  std::fill(labels.begin() + 10, labels.end(), 1);
  const double blob = hc::silhouette_mean(gen::euclidean_matrix(gen::blobs(rng, centers, 10, 0.003)), {labels, 2});
  o.require(blob >= 0.99, "two-blob mean " + num(blob));
  o.detail << "hand-worked max error " << num(err) << ", 200 random cases bounded, two-blob mean "
           << num(blob);
}

bool same_partition(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if ((a[i] == a[j]) != (b[i] == b[j])) return false;
    }
  }
  return a.size() == b.size();
}

// 5
void fuzzy_cmeans(Outcome& o) {
  gen::Rng rng(1005);
  double row_err = 0.0;
  double worst_increase = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    hc::FcmOptions opt;
    opt.q = gen::uniform(rng, 1.05, 2.5);
    const auto r = hc::fuzzy_cmeans(gen::points(rng, gen::uniform_int(rng, 10, 80), 3), gen::uniform_int(rng, 2, 8),
                                    static_cast<std::uint64_t>(trial), opt);
    row_err = std::max(row_err, (r.membership.u.rowwise().sum().array() - 1.0).abs().maxCoeff());
    for (std::size_t t = 1; t < r.objective_history.size(); ++t) {
      worst_increase = std::max(worst_increase, (r.objective_history[t] - r.objective_history[t - 1]) /
                                                    r.objective_history[t - 1]);
    }
  }
  Eigen::MatrixXd centers(3, 2);
  centers << 0, 0, 20, 0, 0, 20;
  const Eigen::MatrixXd x = gen::blobs(rng, centers, 15, 1.0);
  hc::FcmOptions near_crisp;
  near_crisp.q = 1.01;
  const auto f = hc::fuzzy_cmeans(x, 3, 7, near_crisp);
  row_err = std::max(row_err, (f.membership.u.rowwise().sum().array() - 1.0).abs().maxCoeff());
  const bool match = same_partition(f.membership.argmax(), hc::kmeans(x, 3, 7).assignment.labels);
  o.require(row_err <= 1e-9, "row sum error " + num(row_err));
  o.require(worst_increase <= 1e-12, "objective increased by " + num(worst_increase));
  o.require(match, "q = 1.01 labels differ from k-means");
  o.detail << "max row-sum error " << num(row_err) << ", max relative objective increase "
           << num(worst_increase) << ", q=1.01 vs k-means " << (match ? "match" : "differ");
}

// 6
void combinations(Outcome& o) {
  gen::Rng rng(1006);
  double sum_err = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const Eigen::VectorXd x = hl::combo_features_2(gen::simplex_rows(rng, 5, gen::uniform_int(rng, 1, 13)));
    sum_err = std::max(sum_err, std::abs(x.sum() - 10.0));
  }
  int checked = 0, wrong = 0;
  for (int c = 1; c <= 4; ++c) {
    std::array<int, 5> l{};
    std::function<void(int, int)> rec = [&](int pos, int lo) {
      if (pos == 5) {
        Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(c, c);
        for (int i = 0; i < 5; ++i) {
          for (int j = i + 1; j < 5; ++j) {
            counts(std::min(l[static_cast<std::size_t>(i)], l[static_cast<std::size_t>(j)]),
                   std::max(l[static_cast<std::size_t>(i)], l[static_cast<std::size_t>(j)])) += 1;
          }
        }
        Eigen::VectorXd expect(c * (c + 1) / 2);
        int col = 0;
        for (int a = 0; a < c; ++a) {
          for (int b = a; b < c; ++b) expect(col++) = counts(a, b);
        }
        ++checked;
        if (hl::combo_features_2(l, c) != expect) ++wrong;
        return;
      }
      for (int v = lo; v < c; ++v) {
        l[static_cast<std::size_t>(pos)] = v;
        rec(pos + 1, v);
      }
    };
    rec(0, 0);
  }
  const int n5 = hl::n_combination_features(5), n10 = hl::n_combination_features(10);
  o.require(sum_err <= 1e-9, "sum error " + num(sum_err));
  o.require(wrong == 0, std::to_string(wrong) + " multisets differ from enumeration");
  o.require(n5 == 15 && n10 == 55, "feature counts " + std::to_string(n5) + ", " + std::to_string(n10));
  o.detail << "max |sum - 10| " << num(sum_err) << ", " << checked << " multisets enumerated, counts(5)=" << n5
           << " counts(10)=" << n10;
}

// 7
void formulas(Outcome& o) {
  const double adj = hl::adjust_offrtg(110, 150, 100);
  const double ts = hl::true_shooting_pct(30, 20, 10);
  const double ppp = hl::points_per_possession(50, 40, 0, 10);
  o.require(adj == 105.0, "adjust_offrtg " + num(adj));
  o.require(std::abs(ts - 61.4754) <= 1e-4, "TS% " + std::to_string(ts));
  o.require(ppp == 1.0, "PPP " + num(ppp));
  o.detail << "adjust_offrtg " << adj << ", TS% " << std::to_string(ts) << ", PPP " << ppp;
}

// 8
void gradient_check(Outcome& o) {
  gen::Rng rng(1008);
  hi::HierarchicalModelSpec spec;
  spec.n_teams = 3;
  spec.n_features = 6;
  spec.mu_alpha = 105.0;
  const int rows = 50;
  const Eigen::MatrixXd x = gen::points(rng, rows, 6);
  const Eigen::VectorXd y = Eigen::VectorXd::Constant(rows, 105.0) + gen::points(rng, rows, 1, 3.0).col(0);
  std::vector<int> team;
  for (int i = 0; i < rows; ++i) team.push_back(i % 3);
  const hi::ParameterLayout l(spec);
  double worst = 0.0;
  for (int point = 0; point < 20; ++point) {
    Eigen::VectorXd theta = gen::points(rng, l.dim, 1).col(0);
    for (int t = 0; t < 3; ++t) theta(l.alpha + t) += 105.0;
    Eigen::VectorXd g(l.dim);
    hi::log_posterior(spec, x, y, team, theta, &g);
    for (int j = 0; j < l.dim; ++j) {
      Eigen::VectorXd up = theta, down = theta;
      up(j) += 1e-5;
      down(j) -= 1e-5;
      const double fd = (hi::log_posterior(spec, x, y, team, up, nullptr) -
                         hi::log_posterior(spec, x, y, team, down, nullptr)) / 2e-5;
      worst = std::max(worst, std::abs(fd - g(j)) / std::max(1.0, std::abs(g(j))));
    }
  }
  o.require(worst < 1e-5, "max relative error " + num(worst));
  o.detail << "20 points x " << l.dim << " coordinates, max relative error " << num(worst);
}

// 9
void sampler_calibration(Outcome& o) {
  const auto t0 = Clock::now();
  hi::NutsOptions opt;
  opt.seed = 1009;
  const auto normal = hi::nuts_sample(hi::StandardNormal(4), opt);
  double worst_mean = 0.0, lo_var = 1e300, hi_var = 0.0;
  for (int j = 0; j < 4; ++j) {
    const Eigen::VectorXd d = normal.pooled(j);
    const double m = d.mean();
    const double v = (d.array() - m).square().sum() / static_cast<double>(d.size() - 1);
    worst_mean = std::max(worst_mean, std::abs(m));
    lo_var = std::min(lo_var, v);
    hi_var = std::max(hi_var, v);
  }
  const double normal_rhat = hi::split_rhat(normal).max;
  o.require(worst_mean < 0.05, "standard normal |mean| " + num(worst_mean));
  o.require(lo_var >= 0.9 && hi_var <= 1.1, "standard normal variance in [" + num(lo_var) + ", " + num(hi_var) + "]");

  gen::Rng rng(1010);
  const int n = 200, f = 3;
  hi::HierarchicalModelSpec spec;
  spec.n_teams = 1;
  spec.n_features = f;
  spec.mu_alpha = 0.0;
  spec.alpha_sd = 100.0;
  spec.mu_beta_sd = 100.0;
  spec.fixed_sigma_beta = 10.0;
  spec.fixed_epsilon = 2.0;
  const Eigen::MatrixXd x = gen::points(rng, n, f);
  const Eigen::VectorXd y = (x * Eigen::Vector3d(1.5, -0.5, 2.0)).array() + 4.0 +
                            gen::points(rng, n, 1, 2.0).col(0).array();
  const hi::HierarchicalModel model(spec, x, y, std::vector<int>(n, 0));
  const auto post = hi::nuts_sample(model, opt);
  const auto exact = oracle::one_team_posterior(x, y, 0.0, 100.0, 100.0, 10.0, 2.0);
  double worst_z = 0.0, worst_sd = 0.0;
  for (int k = 0; k < f; ++k) {
    const int j = model.layout().beta_index(0, k);
    const Eigen::VectorXd d = post.pooled(j);
    const double m = d.mean();
    const double sd = std::sqrt((d.array() - m).square().sum() / static_cast<double>(d.size() - 1));
    const double exact_sd = std::sqrt(exact.cov(1 + k, 1 + k));
    const double se = exact_sd / std::sqrt(hi::effective_sample_size(post.by_chain(j)));
    worst_z = std::max(worst_z, std::abs(m - exact.mean(1 + k)) / se);
    worst_sd = std::max(worst_sd, std::abs(sd / exact_sd - 1.0));
  }
  const double post_rhat = hi::split_rhat(post).max;
  const double secs = seconds_since(t0);
  o.require(worst_z < 3.0, "conjugate mean off by " + num(worst_z) + " SE");
  o.require(worst_sd < 0.15, "conjugate sd off by " + num(100 * worst_sd) + "%");
  o.require(std::max(normal_rhat, post_rhat) < 1.1, "max split R-hat " + num(std::max(normal_rhat, post_rhat)));
  o.require(secs < 300.0, "runtime " + num(secs) + " s");
  o.detail << "N(0,1): max|mean| " << num(worst_mean) << ", var in [" << num(lo_var) << ", " << num(hi_var)
           << "]; conjugate: max " << num(worst_z) << " SE, sd within " << num(100 * worst_sd)
           << "%; max R-hat " << num(std::max(normal_rhat, post_rhat)) << "; " << num(secs) << " s";
}

// 10
void effect_recovery(Outcome& o) {
  const auto t0 = Clock::now();
  hs::PipelineConfig cfg;
  const auto ds = hs::synthesize_dataset(hs::SynthSpec::from_config(cfg), 1011);
  hi::HierarchicalModelSpec spec;
  spec.n_teams = static_cast<int>(ds.truth.team_names.size());
  spec.n_features = static_cast<int>(ds.design.x.cols());
  spec.mu_alpha = cfg.inference.mu_alpha_shots;
  spec.alpha_sd = cfg.inference.alpha_sd;
  spec.mu_beta_sd = cfg.inference.mu_beta_sd;
  spec.sigma_beta_scale = cfg.inference.sigma_beta_scale;
  spec.epsilon_scale = cfg.inference.epsilon_scale;
  const hi::HierarchicalModel model(spec, ds.design.x, ds.design.y, ds.design.team_index);
  hi::NutsOptions opt;
  opt.seed = 1012;
  const auto post = hi::nuts_sample(model, opt);
  const auto rhat = hi::split_rhat(post, cfg.inference.rhat_threshold);
  std::vector<std::string> labels = ds.truth.feature_names;
  const auto table = hi::effect_table(post, model.layout(), ds.truth.feature_names, labels, rhat.converged);
  const int top = table.order_by_median().front();
  const auto& planted = table.rows[static_cast<std::size_t>(ds.truth.planted_feature)];
  int covered = 0, total = 0;
  for (int t = 0; t < spec.n_teams; ++t) {
    for (int f = 0; f < spec.n_features; ++f) {
      const Eigen::VectorXd d = post.pooled(model.layout().beta_index(t, f));
      std::vector<double> v(d.data(), d.data() + d.size());
      const double lo = hi::quantile(v, 0.05), hi_q = hi::quantile(v, 0.95);
      const double truth = ds.truth.beta_team(t, f);
      covered += (truth >= lo && truth <= hi_q) ? 1 : 0;
      ++total;
    }
  }
  const double coverage = static_cast<double>(covered) / total;
  const double secs = seconds_since(t0);
  o.require(top == ds.truth.planted_feature, "top pair " + table.rows[static_cast<std::size_t>(top)].feature);
  o.require(planted.mu_beta_lo > 0.0 || planted.mu_beta_hi < 0.0,
            "planted 90% interval [" + num(planted.mu_beta_lo) + ", " + num(planted.mu_beta_hi) + "] covers 0");
  o.require(coverage >= 0.8, "coverage " + num(coverage));
  o.require(rhat.converged, "max R-hat " + num(rhat.max));
  o.require(secs < 600.0, "runtime " + num(secs) + " s");
  o.detail << "top " << table.rows[static_cast<std::size_t>(top)].feature << " (planted "
           << ds.truth.feature_names[static_cast<std::size_t>(ds.truth.planted_feature)] << "), 90% interval ["
           << num(planted.mu_beta_lo) << ", " << num(planted.mu_beta_hi) << "], coverage " << covered << "/"
           << total << ", max R-hat " << num(rhat.max) << ", " << num(secs) << " s";
}

// 11
void pipeline_determinism(Outcome& o, const std::string& exe) {
  if (exe.empty()) {
    o.require(false, "no CLI path given");
    return;
  }
  const auto root = cli::scratch("acceptance_determinism");
  const auto cfg = cli::write_config(root, cli::small_config());
  std::map<std::string, std::string> runs[2];
  for (int r = 0; r < 2; ++r) {
    const auto out = root / ("run" + std::to_string(r));
    std::filesystem::create_directories(out);
    for (const auto& res : cli::full_pipeline(exe, cfg, out, root)) {
      o.require(res.exit_code == 0, "stage exited " + std::to_string(res.exit_code) + ": " + res.stderr_text);
      if (res.exit_code != 0) return;
    }
    runs[r] = cli::snapshot(out);
  }
  int differing = 0;
  for (const auto& [name, bytes] : runs[0]) {
    const auto it = runs[1].find(name);
    if (it == runs[1].end() || it->second != bytes) ++differing;
  }
  o.require(runs[0].size() == runs[1].size() && differing == 0, std::to_string(differing) + " artifacts differ");
  o.detail << runs[0].size() << " artifacts compared, " << differing << " differ";
}

// 12
void k_recovery(Outcome& o) {
  hs::PipelineConfig cfg;
  const auto ds = hs::synthesize_dataset(hs::SynthSpec::from_config(cfg), 1013);
  const Eigen::MatrixXd f = hs::features::extract_feature_matrix(ds.segments, cfg.features.rim);
  const auto pca = hs::features::fit_standardize_pca(f, cfg.features.pca_variance_target);
  const Eigen::MatrixXd s = hs::features::pca_transform(pca, f);
  std::map<std::string, std::vector<Eigen::Index>> rows;
  for (std::size_t i = 0; i < ds.segments.size(); ++i) rows[ds.segments[i].player_id].push_back(static_cast<Eigen::Index>(i));
  std::vector<ht::LabeledDistribution> players;
  for (const auto& [id, r] : rows) {
    Eigen::MatrixXd pts(static_cast<Eigen::Index>(r.size()), s.cols());
    for (std::size_t k = 0; k < r.size(); ++k) pts.row(static_cast<Eigen::Index>(k)) = s.row(r[k]);
    players.emplace_back(id, ht::EmpiricalDistribution::uniform(pts));
  }
  const auto dm = ht::pairwise_distance_matrix(players);
  const auto sweep = hc::silhouette_sweep(dm, hc::ward_linkage(dm), 2, 20);
  const int best = hc::silhouette_argmax(sweep);
  o.require(best == 3, "argmax k = " + std::to_string(best));
  o.require(sweep.front().k == 2 && sweep.back().k == 20, "sweep range");
  o.detail << players.size() << " players, sweep k=2..20, argmax k = " << best << " (mean "
           << num(sweep[static_cast<std::size_t>(best - 2)].mean) << ")";
}

}  // namespace

int main(int argc, char** argv) {
  const std::string exe = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"EMD matches dense LP oracle", emd_oracle},
      {"W_p metric properties", metric_properties},
      {"Ward matches naive oracle", ward_oracle},
      {"Silhouette hand-worked, bounds, separation", silhouette},
      {"Fuzzy c-means invariants", fuzzy_cmeans},
      {"Combination features", combinations},
      {"Formula spot checks", formulas},
      {"Log-posterior gradient check", gradient_check},
      {"Sampler calibration", sampler_calibration},
      {"End-to-end effect recovery", effect_recovery},
      {"Pipeline determinism", [&](Outcome& o) { pipeline_determinism(o, exe); }},
      {"Silhouette k recovery", k_recovery},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failed += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << (i + 1) << "] " << criteria[i].first << ": "
              << o.detail.str() << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
