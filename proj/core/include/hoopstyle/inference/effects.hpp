#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hoopstyle/inference/model.hpp"
#include "hoopstyle/inference/nuts.hpp"

namespace hoopstyle::inference {

struct EffectRow {
  std::string feature;  // column name, e.g. combo_0_1
  std::string label;    // human-readable pair label
  std::vector<double> team_means;  // E[beta_t] per team
  double median = 0.0;             // median of team_means
  double mu_beta_mean = 0.0;
  double mu_beta_lo = 0.0;  // 5% quantile of mu_beta
  double mu_beta_hi = 0.0;  // 95% quantile of mu_beta
};

struct EffectTable {
  std::vector<EffectRow> rows;  // feature order
  bool converged = true;        // false marks a table from a non-converged fit

  // Row indices ordered by median, largest first (ties by feature order).
  std::vector<int> order_by_median() const;
};

EffectTable effect_table(const PosteriorSamples& samples, const ParameterLayout& layout,
                         const std::vector<std::string>& features,
                         const std::vector<std::string>& labels, bool converged = true);

// Linear-interpolated sample quantile, q in [0, 1].
double quantile(std::vector<double> values, double q);
double median(std::vector<double> values);

// Rows sorted by median; team columns use `team_names` when given.
void write_effects(std::ostream& out, const EffectTable& table,
                   const std::vector<std::string>& team_names = {});

}  // namespace hoopstyle::inference
