#include "hoopstyle/inference/effects.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "hoopstyle/error.hpp"
#include "hoopstyle/util/csv.hpp"

namespace hoopstyle::inference {

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InvalidArgument("quantile of an empty set");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

std::vector<int> EffectTable::order_by_median() const {
  std::vector<int> idx(rows.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    return rows[static_cast<std::size_t>(a)].median > rows[static_cast<std::size_t>(b)].median;
  });
  return idx;
}

EffectTable effect_table(const PosteriorSamples& samples, const ParameterLayout& layout,
                         const std::vector<std::string>& features,
                         const std::vector<std::string>& labels, bool converged) {
  const int F = layout.n_features;
  if (features.size() != static_cast<std::size_t>(F) || labels.size() != features.size()) {
    throw InvalidArgument("effect table: feature name count mismatch");
  }
  if (samples.dim() != layout.dim) throw InvalidArgument("effect table: layout mismatch");
  EffectTable table;
  table.converged = converged;
  for (int f = 0; f < F; ++f) {
    EffectRow row;
    row.feature = features[static_cast<std::size_t>(f)];
    row.label = labels[static_cast<std::size_t>(f)];
    for (int t = 0; t < layout.n_teams; ++t) {
      row.team_means.push_back(samples.pooled(layout.beta_index(t, f)).mean());
    }
    row.median = median(row.team_means);
    const Eigen::VectorXd mb = samples.pooled(layout.mu_beta + f);
    std::vector<double> draws(mb.data(), mb.data() + mb.size());
    row.mu_beta_mean = mb.mean();
    row.mu_beta_lo = quantile(draws, 0.05);
    row.mu_beta_hi = quantile(draws, 0.95);
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_effects(std::ostream& out, const EffectTable& table,
                   const std::vector<std::string>& team_names) {
  std::vector<std::string> header{"rank", "feature", "pair", "median", "mu_beta_mean",
                                  "mu_beta_q05", "mu_beta_q95", "fit_converged"};
  const std::size_t teams = table.rows.empty() ? 0 : table.rows.front().team_means.size();
  for (std::size_t t = 0; t < teams; ++t) {
    header.push_back(team_names.size() == teams ? team_names[t] : "team_" + std::to_string(t));
  }
  csv::write_row(out, header);
  int rank = 1;
  for (int i : table.order_by_median()) {
    const auto& r = table.rows[static_cast<std::size_t>(i)];
    std::vector<std::string> row{std::to_string(rank++),     r.feature,
                                 r.label,                    csv::format(r.median),
                                 csv::format(r.mu_beta_mean), csv::format(r.mu_beta_lo),
                                 csv::format(r.mu_beta_hi),
                                 table.converged ? "true" : "false"};
    for (double m : r.team_means) row.push_back(csv::format(m));
    csv::write_row(out, row);
  }
}

}  // namespace hoopstyle::inference
