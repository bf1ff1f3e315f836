#pragma once

// Dense two-phase tableau simplex with Bland's rule. Slow and simple; only
// meant to cross-check the transport solver on small problems.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

struct LpSolution {
  bool feasible = false;
  double objective = 0.0;
  Eigen::VectorXd x;
};

namespace detail {

inline void pivot(Eigen::MatrixXd& t, std::vector<int>& basis, int row, int col) {
  t.row(row) /= t(row, col);
  for (int i = 0; i < t.rows(); ++i) {
    if (i != row && t(i, col) != 0.0) t.row(i) -= t(i, col) * t.row(row);
  }
  basis[static_cast<std::size_t>(row)] = col;
}

// Minimizes cost . x over the current tableau, entering only columns < n_allowed.
inline void run(Eigen::MatrixXd& t, std::vector<int>& basis, const Eigen::VectorXd& cost,
                int n_allowed) {
  const int m = static_cast<int>(t.rows());
  const int rhs = static_cast<int>(t.cols()) - 1;
  constexpr double eps = 1e-11;
  for (int guard = 0; guard < 100000; ++guard) {
    int enter = -1;
    for (int j = 0; j < n_allowed; ++j) {
      double r = cost(j);
      for (int i = 0; i < m; ++i) r -= cost(basis[static_cast<std::size_t>(i)]) * t(i, j);
      if (r < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return;
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (t(i, enter) > eps) {
        const double ratio = t(i, rhs) / t(i, enter);
        if (ratio < best - eps ||
            (std::abs(ratio - best) <= eps && basis[static_cast<std::size_t>(i)] <
                                                  basis[static_cast<std::size_t>(leave)])) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) throw std::runtime_error("dense LP oracle: unbounded");
    pivot(t, basis, leave, enter);
  }
  throw std::runtime_error("dense LP oracle: iteration guard hit");
}

}  // namespace detail

// min c.x  s.t.  A x = b, x >= 0
inline LpSolution solve_lp(Eigen::MatrixXd a, Eigen::VectorXd b, const Eigen::VectorXd& c) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  for (int i = 0; i < m; ++i) {
    if (b(i) < 0) {
      a.row(i) *= -1.0;
      b(i) *= -1.0;
    }
  }
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, n + m + 1);
  t.leftCols(n) = a;
  t.block(0, n, m, m).setIdentity();
  t.col(n + m) = b;
  std::vector<int> basis(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n + m);
  phase1.tail(m).setOnes();
  detail::run(t, basis, phase1, n + m);

  LpSolution out;
  double infeas = 0.0;
  for (int i = 0; i < m; ++i) {
    if (basis[static_cast<std::size_t>(i)] >= n) infeas += t(i, n + m);
  }
  if (infeas > 1e-9) return out;

  // Drive zero-level artificials out of the basis; rows with no pivot are redundant.
  for (int i = 0; i < m; ++i) {
    if (basis[static_cast<std::size_t>(i)] < n) continue;
    for (int j = 0; j < n; ++j) {
      if (std::abs(t(i, j)) > 1e-9) {
        detail::pivot(t, basis, i, j);
        break;
      }
    }
  }

  Eigen::VectorXd phase2 = Eigen::VectorXd::Zero(n + m);
  phase2.head(n) = c;
  detail::run(t, basis, phase2, n);

  out.feasible = true;
  out.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i) {
    const int j = basis[static_cast<std::size_t>(i)];
    if (j < n) out.x(j) = t(i, n + m);
  }
  out.objective = c.dot(out.x);
  return out;
}

// Optimal transport cost sum D_ij P_ij between weighted point sets.
inline double transport_cost(const Eigen::MatrixXd& pa, const Eigen::VectorXd& wa,
                             const Eigen::MatrixXd& pb, const Eigen::VectorXd& wb, double p) {
  const int m = static_cast<int>(pa.rows());
  const int n = static_cast<int>(pb.rows());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m + n, m * n);
  Eigen::VectorXd b(m + n);
  Eigen::VectorXd c(m * n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      const int v = i * n + j;
      a(i, v) = 1.0;
      a(m + j, v) = 1.0;
      c(v) = std::pow((pa.row(i) - pb.row(j)).norm(), p);
    }
  }
  b.head(m) = wa;
  b.tail(n) = wb;
  const LpSolution s = solve_lp(a, b, c);
  if (!s.feasible) throw std::runtime_error("dense LP oracle: infeasible transport problem");
  return s.objective;
}

}  // namespace oracle
