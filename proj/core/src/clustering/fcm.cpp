#include "hoopstyle/clustering/fcm.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "hoopstyle/clustering/kmeans.hpp"
#include "hoopstyle/error.hpp"

namespace hoopstyle::clustering {

namespace {
constexpr double kCoincide = 1e-12;
}

std::vector<int> MembershipMatrix::argmax() const {
  std::vector<int> out(static_cast<std::size_t>(u.rows()));
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    Eigen::Index best = 0;
    u.row(i).maxCoeff(&best);
    out[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return out;
}

Eigen::VectorXd MembershipMatrix::max_membership() const {
  return u.rowwise().maxCoeff();
}

void MembershipMatrix::validate(double tol) const {
  if (u.cols() < 1) throw InvalidArgument("membership matrix has no clusters");
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    for (Eigen::Index k = 0; k < u.cols(); ++k) {
      const double v = u(i, k);
      if (!(v >= -tol && v <= 1.0 + tol)) {
        throw InvalidArgument("membership out of [0, 1] at row " + std::to_string(i));
      }
    }
    if (std::abs(u.row(i).sum() - 1.0) > tol) {
      throw InvalidArgument("membership row " + std::to_string(i) + " does not sum to 1");
    }
  }
}

Eigen::MatrixXd fcm_memberships(const Eigen::MatrixXd& x, const Eigen::MatrixXd& centroids,
                                double q) {
  const Eigen::Index n = x.rows();
  const Eigen::Index c = centroids.rows();
  const double expo = 1.0 / (q - 1.0);
  Eigen::MatrixXd u(n, c);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd d2 = (centroids.rowwise() - x.row(i)).rowwise().squaredNorm();
    Eigen::Index nearest = 0;
    const double dmin2 = d2.minCoeff(&nearest);
    u.row(i).setZero();
    if (std::sqrt(dmin2) < kCoincide) {
      u(i, nearest) = 1.0;
      continue;
    }
    double total = 0.0;
    for (Eigen::Index k = 0; k < c; ++k) {
      const double w = std::pow(dmin2 / d2(k), expo);
      u(i, k) = w;
      total += w;
    }
    u.row(i) /= total;
  }
  return u;
}

Eigen::MatrixXd fcm_centroids(const Eigen::MatrixXd& x, const Eigen::MatrixXd& u, double q) {
  const Eigen::MatrixXd w = u.array().pow(q).matrix();
  Eigen::MatrixXd v = w.transpose() * x;
  const Eigen::VectorXd totals = w.colwise().sum().transpose();
  for (Eigen::Index k = 0; k < v.rows(); ++k) {
    if (totals(k) > 0.0) v.row(k) /= totals(k);
  }
  return v;
}

double fcm_objective(const Eigen::MatrixXd& x, const Eigen::MatrixXd& u,
                     const Eigen::MatrixXd& centroids, double q) {
  double j = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index k = 0; k < centroids.rows(); ++k) {
      const double uk = u(i, k);
      if (uk == 0.0) continue;
      j += std::pow(uk, q) * (x.row(i) - centroids.row(k)).squaredNorm();
    }
  }
  return j;
}

FcmResult fuzzy_cmeans(const Eigen::MatrixXd& x, int c, std::uint64_t seed,
                       const FcmOptions& options) {
  if (c < 2) throw InvalidArgument("fuzzy c-means: need c >= 2");
  if (x.rows() < c) throw InvalidArgument("fuzzy c-means: need n >= c");
  if (!(options.q > 1.0)) throw InvalidArgument("fuzzy c-means: need q > 1");
  if (!x.allFinite()) throw InvalidArgument("fuzzy c-means: non-finite input");

  std::mt19937_64 rng(seed);
  FcmResult r;
  Eigen::MatrixXd v = kmeans_plus_plus(x, c, rng);
  Eigen::MatrixXd u = fcm_memberships(x, v, options.q);
  double j = fcm_objective(x, u, v, options.q);
  r.objective_history.push_back(j);

  for (int it = 1; it <= options.max_iter; ++it) {
    v = fcm_centroids(x, u, options.q);
    u = fcm_memberships(x, v, options.q);
    const double next = fcm_objective(x, u, v, options.q);
    r.objective_history.push_back(next);
    r.iterations = it;
    const double decrease = j - next;
    j = next;
    if (decrease <= options.tol * std::max(next, 1e-300)) {
      r.converged = true;
      break;
    }
  }
  r.membership.u = std::move(u);
  r.membership.centroids = std::move(v);
  return r;
}

}  // namespace hoopstyle::clustering
