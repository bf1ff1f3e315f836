#include "hoopstyle/transport/network_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "hoopstyle/error.hpp"

namespace hoopstyle::transport {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Node layout: sources [0, m), sinks [m, m + n), root m + n.
// Arc layout: real arc i -> m + j has index i * n + j; the artificial arc of
// node v has index m * n + v and joins v with the root (source -> root for
// sources, root -> sink for sinks).
class Solver {
 public:
  Solver(std::span<const double> supply, std::span<const double> demand,
         const Eigen::MatrixXd& cost)
      : m_(supply.size()),
        n_(demand.size()),
        nodes_(m_ + n_ + 1),
        root_(m_ + n_),
        real_arcs_(m_ * n_),
        cost_(cost) {
    double max_cost = 0.0;
    for (Eigen::Index i = 0; i < cost.rows(); ++i) {
      for (Eigen::Index j = 0; j < cost.cols(); ++j) max_cost = std::max(max_cost, std::abs(cost(i, j)));
    }
    scale_ = 1.0 + max_cost;
    artificial_cost_ = scale_ * static_cast<double>(nodes_);
    flow_.assign(real_arcs_ + m_ + n_, 0.0);
    tree_slot_.assign(flow_.size(), -1);
    parent_.assign(nodes_, 0);
    pred_.assign(nodes_, 0);
    pred_up_.assign(nodes_, false);
    depth_.assign(nodes_, 0);
    pi_.assign(nodes_, 0.0);
    adjacency_.resize(nodes_);

    for (std::size_t v = 0; v < m_ + n_; ++v) {
      const std::size_t arc = real_arcs_ + v;
      flow_[arc] = v < m_ ? supply[v] : demand[v - m_];
      tree_slot_[arc] = static_cast<long>(tree_arcs_.size());
      tree_arcs_.push_back(arc);
    }
    rebuild_tree();
  }

  NetworkSimplexResult run(std::size_t max_pivots) {
    const double tol = 1e-12 * scale_;
    std::size_t pivots = 0;
    while (true) {
      const auto [entering, rc] = price();
      if (entering == kNone || rc >= -tol) break;
      if (pivots >= max_pivots) {
        std::ostringstream msg;
        msg << "network simplex hit the pivot cap (" << max_pivots << ") on a " << m_ << "x"
            << n_ << " problem; most negative reduced cost " << rc;
        throw SolverError(msg.str());
      }
      pivot(entering);
      ++pivots;
    }

    for (std::size_t v = 0; v < m_ + n_; ++v) {
      const double f = flow_[real_arcs_ + v];
      if (f > 1e-9 * total_mass()) {
        throw SolverError("network simplex: artificial arc carries flow; marginals are unbalanced");
      }
    }

    NetworkSimplexResult result;
    result.flow.resize(static_cast<Eigen::Index>(m_), static_cast<Eigen::Index>(n_));
    double min_rc = kInf;
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        const auto ii = static_cast<Eigen::Index>(i);
        const auto jj = static_cast<Eigen::Index>(j);
        result.flow(ii, jj) = flow_[i * n_ + j];
        result.cost += cost_(ii, jj) * flow_[i * n_ + j];
        min_rc = std::min(min_rc, cost_(ii, jj) + pi_[i] - pi_[m_ + j]);
      }
    }
    result.pivots = pivots;
    result.min_reduced_cost = min_rc;
    return result;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  double total_mass() const {
    double total = 0.0;
    for (std::size_t v = 0; v < m_; ++v) total += flow_[real_arcs_ + v];
    return std::max(total, 1.0);
  }

  std::size_t source(std::size_t arc) const {
    if (arc < real_arcs_) return arc / n_;
    const std::size_t v = arc - real_arcs_;
    return v < m_ ? v : root_;
  }

  std::size_t target(std::size_t arc) const {
    if (arc < real_arcs_) return m_ + arc % n_;
    const std::size_t v = arc - real_arcs_;
    return v < m_ ? root_ : v;
  }

  double arc_cost(std::size_t arc) const {
    if (arc < real_arcs_) {
      return cost_(static_cast<Eigen::Index>(arc / n_), static_cast<Eigen::Index>(arc % n_));
    }
    return artificial_cost_;
  }

  // Recomputes parent/depth/potentials from the tree arc list (O(nodes)).
  void rebuild_tree() {
    for (auto& a : adjacency_) a.clear();
    for (std::size_t arc : tree_arcs_) {
      adjacency_[source(arc)].push_back(arc);
      adjacency_[target(arc)].push_back(arc);
    }
    std::vector<bool> seen(nodes_, false);
    std::vector<std::size_t> queue;
    queue.reserve(nodes_);
    queue.push_back(root_);
    seen[root_] = true;
    parent_[root_] = root_;
    depth_[root_] = 0;
    pi_[root_] = 0.0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t x = queue[head];
      for (std::size_t arc : adjacency_[x]) {
        const std::size_t s = source(arc);
        const std::size_t t = target(arc);
        const std::size_t y = s == x ? t : s;
        if (seen[y]) continue;
        seen[y] = true;
        parent_[y] = x;
        pred_[y] = arc;
        pred_up_[y] = s == y;  // arc points from child to parent
        depth_[y] = depth_[x] + 1;
        // Tree arcs have zero reduced cost: cost + pi[s] - pi[t] = 0.
        pi_[y] = pred_up_[y] ? pi_[x] - arc_cost(arc) : pi_[x] + arc_cost(arc);
        queue.push_back(y);
      }
    }
  }

  std::pair<std::size_t, double> price() const {
    std::size_t best = kNone;
    double best_rc = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const double pi_i = pi_[i];
      const std::size_t base = i * n_;
      for (std::size_t j = 0; j < n_; ++j) {
        const std::size_t arc = base + j;
        if (tree_slot_[arc] >= 0) continue;
        const double rc = cost_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +
                          pi_i - pi_[m_ + j];
        if (rc < best_rc) {
          best_rc = rc;
          best = arc;
        }
      }
    }
    return {best, best_rc};
  }

  void pivot(std::size_t entering) {
    const std::size_t first = source(entering);
    const std::size_t second = target(entering);

    std::size_t u = first;
    std::size_t v = second;
    while (u != v) {
      if (depth_[u] >= depth_[v]) {
        u = parent_[u];
      } else {
        v = parent_[v];
      }
    }
    const std::size_t join = u;

    // Strongly feasible leaving-arc rule: strict on the first side, non-strict
    // on the second side.
    double delta = kInf;
    std::size_t leaving_node = kNone;
    for (std::size_t x = first; x != join; x = parent_[x]) {
      const double d = pred_up_[x] ? flow_[pred_[x]] : kInf;
      if (d < delta) {
        delta = d;
        leaving_node = x;
      }
    }
    for (std::size_t x = second; x != join; x = parent_[x]) {
      const double d = pred_up_[x] ? kInf : flow_[pred_[x]];
      if (d <= delta) {
        delta = d;
        leaving_node = x;
      }
    }
    if (leaving_node == kNone || delta == kInf) {
      throw SolverError("network simplex: unbounded cycle");
    }

    flow_[entering] += delta;
    for (std::size_t x = first; x != join; x = parent_[x]) {
      flow_[pred_[x]] += pred_up_[x] ? -delta : delta;
    }
    for (std::size_t x = second; x != join; x = parent_[x]) {
      flow_[pred_[x]] += pred_up_[x] ? delta : -delta;
    }
    const std::size_t leaving = pred_[leaving_node];
    flow_[leaving] = 0.0;

    const long slot = tree_slot_[leaving];
    tree_slot_[leaving] = -1;
    tree_arcs_[static_cast<std::size_t>(slot)] = entering;
    tree_slot_[entering] = slot;
    rebuild_tree();
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t nodes_;
  std::size_t root_;
  std::size_t real_arcs_;
  const Eigen::MatrixXd& cost_;
  double scale_ = 1.0;
  double artificial_cost_ = 1.0;

  std::vector<double> flow_;
  std::vector<long> tree_slot_;
  std::vector<std::size_t> tree_arcs_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> pred_;
  std::vector<bool> pred_up_;
  std::vector<std::size_t> depth_;
  std::vector<double> pi_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

}  // namespace

NetworkSimplexResult solve_transportation(std::span<const double> supply,
                                          std::span<const double> demand,
                                          const Eigen::MatrixXd& cost,
                                          std::size_t max_pivots) {
  if (supply.empty() || demand.empty()) throw InvalidArgument("solve_transportation: empty side");
  if (cost.rows() != static_cast<Eigen::Index>(supply.size()) ||
      cost.cols() != static_cast<Eigen::Index>(demand.size())) {
    throw InvalidArgument("solve_transportation: cost matrix shape mismatch");
  }
  if (!cost.allFinite()) throw InvalidArgument("solve_transportation: non-finite cost");
  double total_supply = 0.0;
  double total_demand = 0.0;
  for (double s : supply) {
    if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("solve_transportation: supply must be positive");
    total_supply += s;
  }
  for (double d : demand) {
    if (!(d > 0.0) || !std::isfinite(d)) throw InvalidArgument("solve_transportation: demand must be positive");
    total_demand += d;
  }
  if (std::abs(total_supply - total_demand) > 1e-12 * std::max(total_supply, total_demand)) {
    throw InvalidArgument("solve_transportation: supply and demand totals differ");
  }
  const std::size_t arcs = supply.size() * demand.size();
  if (max_pivots == 0) max_pivots = 50 * (arcs + supply.size() + demand.size()) + 1000;
  Solver solver(supply, demand, cost);
  return solver.run(max_pivots);
}

}  // namespace hoopstyle::transport
