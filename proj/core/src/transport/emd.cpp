#include "hoopstyle/transport/emd.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include "hoopstyle/error.hpp"
#include "hoopstyle/transport/network_simplex.hpp"

namespace hoopstyle::transport {

EmpiricalDistribution EmpiricalDistribution::uniform(Eigen::MatrixXd points) {
  EmpiricalDistribution d;
  const Eigen::Index m = points.rows();
  d.points = std::move(points);
  d.mass = Eigen::VectorXd::Constant(m, m > 0 ? 1.0 / static_cast<double>(m) : 0.0);
  d.uniform_mass = true;
  d.validate();
  return d;
}

EmpiricalDistribution EmpiricalDistribution::weighted(Eigen::MatrixXd points, Eigen::VectorXd mass) {
  EmpiricalDistribution d;
  d.points = std::move(points);
  d.mass = std::move(mass);
  return d;
}

void EmpiricalDistribution::validate() const {
  if (points.rows() == 0) throw InvalidArgument("empirical distribution has empty support");
  if (mass.size() != points.rows()) throw InvalidArgument("mass and support sizes differ");
  if (!points.allFinite()) throw InvalidArgument("non-finite support point");
  if (!mass.allFinite() || (mass.array() < 0.0).any()) throw InvalidArgument("mass must be >= 0");
  if (std::abs(mass.sum() - 1.0) > 1e-12) throw InvalidArgument("mass must sum to 1");
}

Eigen::MatrixXd ground_cost(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double p) {
  if (a.cols() != b.cols()) throw InvalidArgument("ground_cost: dimension mismatch");
  if (!(p >= 1.0)) throw InvalidArgument("ground_cost: p must be >= 1");
  if (!a.allFinite() || !b.allFinite()) throw InvalidArgument("ground_cost: non-finite input");
  Eigen::MatrixXd d(a.rows(), b.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < b.rows(); ++j) {
      const double dist = (a.row(i) - b.row(j)).norm();
      d(i, j) = p == 1.0 ? dist : (p == 2.0 ? dist * dist : std::pow(dist, p));
    }
  }
  return d;
}

namespace {

// Strict weak order on distributions; used to pick one orientation of each
// unordered pair so that W(mu, nu) and W(nu, mu) are bitwise equal.
bool canonically_before(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index k = 0; k < a.dim(); ++k) {
      if (a.points(i, k) != b.points(i, k)) return a.points(i, k) < b.points(i, k);
    }
  }
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a.mass(i) != b.mass(i)) return a.mass(i) < b.mass(i);
  }
  return false;
}

TransportPlan solve_oriented(const EmpiricalDistribution& mu, const EmpiricalDistribution& nu,
                             double p);

}  // namespace

TransportPlan solve_emd(const EmpiricalDistribution& mu, const EmpiricalDistribution& nu, double p) {
  mu.validate();
  nu.validate();
  if (mu.dim() != nu.dim()) throw InvalidArgument("solve_emd: dimension mismatch");
  if (canonically_before(nu, mu)) {
    TransportPlan swapped = solve_oriented(nu, mu, p);
    swapped.plan.transposeInPlace();
    return swapped;
  }
  return solve_oriented(mu, nu, p);
}

namespace {

TransportPlan solve_oriented(const EmpiricalDistribution& mu, const EmpiricalDistribution& nu,
                             double p) {
  // Zero-mass supports take no part in the LP; their plan rows stay zero.
  std::vector<Eigen::Index> rows;
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < mu.size(); ++i) if (mu.mass(i) > 0.0) rows.push_back(i);
  for (Eigen::Index j = 0; j < nu.size(); ++j) if (nu.mass(j) > 0.0) cols.push_back(j);

  const Eigen::MatrixXd full_cost = ground_cost(mu.points, nu.points, p);
  Eigen::MatrixXd cost(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) {
      cost(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = full_cost(rows[a], cols[b]);
    }
  }

  std::vector<double> supply(rows.size());
  std::vector<double> demand(cols.size());
  double unit = 1.0;
  if (mu.uniform_mass && nu.uniform_mass) {
    // 1/m and 1/n on the common grid lcm(m, n): every mass becomes an exact
    // integer, so pivots never accumulate rounding in the marginals.
    const auto m = static_cast<long long>(rows.size());
    const auto n = static_cast<long long>(cols.size());
    const long long grid = std::lcm(m, n);
    std::fill(supply.begin(), supply.end(), static_cast<double>(grid / m));
    std::fill(demand.begin(), demand.end(), static_cast<double>(grid / n));
    unit = static_cast<double>(grid);
  } else {
    for (std::size_t a = 0; a < rows.size(); ++a) supply[a] = mu.mass(rows[a]);
    for (std::size_t b = 0; b < cols.size(); ++b) demand[b] = nu.mass(cols[b]);
  }

  const NetworkSimplexResult r = solve_transportation(supply, demand, cost);

  TransportPlan out;
  out.plan = Eigen::MatrixXd::Zero(mu.size(), nu.size());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) {
      out.plan(rows[a], cols[b]) = r.flow(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) / unit;
    }
  }
  out.cost = (full_cost.array() * out.plan.array()).sum();
  out.pivots = r.pivots;
  out.min_reduced_cost = r.min_reduced_cost;
  return out;
}

}  // namespace

double wasserstein_distance(const EmpiricalDistribution& mu, const EmpiricalDistribution& nu,
                            double p) {
  const double cost = solve_emd(mu, nu, p).cost;
  return p == 1.0 ? cost : std::pow(std::max(cost, 0.0), 1.0 / p);
}

}  // namespace hoopstyle::transport
