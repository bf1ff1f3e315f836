#include <random>

#include <benchmark/benchmark.h>

#include "hoopstyle/clustering/ward.hpp"
#include "hoopstyle/core/config.hpp"
#include "hoopstyle/core/synth.hpp"
#include "hoopstyle/inference/model.hpp"
#include "hoopstyle/transport/distance_matrix.hpp"
#include "hoopstyle/transport/emd.hpp"

namespace ht = hoopstyle::transport;

namespace {

ht::EmpiricalDistribution cloud(std::mt19937_64& rng, int m, int d) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd p(m, d);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < d; ++j) p(i, j) = n(rng);
  }
  return ht::EmpiricalDistribution::uniform(p);
}

void BM_Emd(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const int m = static_cast<int>(state.range(0));
  const auto a = cloud(rng, m, 5), b = cloud(rng, m, 5);
  for (auto _ : state) benchmark::DoNotOptimize(ht::wasserstein_distance(a, b));
}
BENCHMARK(BM_Emd)->Arg(10)->Arg(30)->Arg(100);

void BM_Ward(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const int n = static_cast<int>(state.range(0));
  const Eigen::MatrixXd p = cloud(rng, n, 4).points;
  ht::DistanceMatrix dm;
  dm.values.resize(n, n);
  for (int i = 0; i < n; ++i) {
    dm.labels.push_back("p" + std::to_string(i));
    for (int j = 0; j < n; ++j) dm.values(i, j) = (p.row(i) - p.row(j)).norm();
  }
  for (auto _ : state) benchmark::DoNotOptimize(hoopstyle::clustering::ward_linkage(dm));
}
BENCHMARK(BM_Ward)->Arg(100)->Arg(400);

void BM_LogPosteriorGradient(benchmark::State& state) {
  hoopstyle::PipelineConfig cfg;
  const auto ds = hoopstyle::synthesize_dataset(hoopstyle::SynthSpec::from_config(cfg), 3);
  hoopstyle::inference::HierarchicalModelSpec spec;
  spec.n_teams = static_cast<int>(ds.truth.team_names.size());
  spec.n_features = static_cast<int>(ds.design.x.cols());
  const hoopstyle::inference::HierarchicalModel model(spec, ds.design.x, ds.design.y, ds.design.team_index);
  std::mt19937_64 rng(4);
  const Eigen::VectorXd theta = model.initial_point(rng);
  Eigen::VectorXd grad(model.dim());
  for (auto _ : state) benchmark::DoNotOptimize(model.log_density(theta, grad));
}
BENCHMARK(BM_LogPosteriorGradient);

}  // namespace

BENCHMARK_MAIN();
