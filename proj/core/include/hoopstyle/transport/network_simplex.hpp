#pragma once

#include <cstddef>
#include <span>

#include <Eigen/Core>

namespace hoopstyle::transport {

struct NetworkSimplexResult {
  Eigen::MatrixXd flow;  // m x n, in the units of the supplies
  double cost = 0.0;     // sum cost(i, j) * flow(i, j)
  std::size_t pivots = 0;
  // Smallest reduced cost over all arcs at termination; >= -tolerance is the
  // optimality certificate.
  double min_reduced_cost = 0.0;
};

// Exact min-cost transportation between `supply` (m sources) and `demand`
// (n sinks) on the complete bipartite graph, solved by the primal network
// simplex with an artificial root and strongly feasible spanning trees.
// Entering arcs follow Dantzig's rule with ties broken by lowest arc index.
// Supplies and demands must be positive and have equal totals (relative
// tolerance 1e-12). Throws SolverError if the pivot cap is reached.
NetworkSimplexResult solve_transportation(std::span<const double> supply,
                                          std::span<const double> demand,
                                          const Eigen::MatrixXd& cost,
                                          std::size_t max_pivots = 0);

}  // namespace hoopstyle::transport
