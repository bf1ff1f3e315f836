#include "hoopstyle/clustering/kmeans.hpp"

#include <limits>

#include "hoopstyle/error.hpp"

namespace hoopstyle::clustering {

Eigen::MatrixXd kmeans_plus_plus(const Eigen::MatrixXd& x, int k, std::mt19937_64& rng) {
  const Eigen::Index n = x.rows();
  if (k < 1 || n < k) throw InvalidArgument("k-means++: need 1 <= k <= n");
  Eigen::MatrixXd centers(k, x.cols());
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  centers.row(0) = x.row(pick(rng));
  Eigen::VectorXd d2 = (x.rowwise() - centers.row(0)).rowwise().squaredNorm();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    Eigen::Index chosen = 0;
    if (total > 0.0) {
      const double target = unit(rng) * total;
      double acc = 0.0;
      chosen = n - 1;
      for (Eigen::Index i = 0; i < n; ++i) {
        acc += d2(i);
        if (acc > target && d2(i) > 0.0) {
          chosen = i;
          break;
        }
      }
      while (d2(chosen) == 0.0 && chosen > 0) --chosen;
    } else {
      chosen = pick(rng);
    }
    centers.row(c) = x.row(chosen);
    d2 = d2.cwiseMin((x.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }
  return centers;
}

std::vector<int> nearest_centroid(const Eigen::MatrixXd& x, const Eigen::MatrixXd& centroids) {
  std::vector<int> labels(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    Eigen::Index best = 0;
    (centroids.rowwise() - x.row(i)).rowwise().squaredNorm().minCoeff(&best);
    labels[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return labels;
}

namespace {

double inertia(const Eigen::MatrixXd& x, const Eigen::MatrixXd& centroids,
               const std::vector<int>& labels) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    total += (x.row(i) - centroids.row(labels[static_cast<std::size_t>(i)])).squaredNorm();
  }
  return total;
}

void reseed_empty(const Eigen::MatrixXd& x, Eigen::MatrixXd& centroids, std::vector<int>& labels) {
  const auto k = centroids.rows();
  std::vector<int> sizes(static_cast<std::size_t>(k), 0);
  for (int l : labels) ++sizes[static_cast<std::size_t>(l)];
  for (Eigen::Index c = 0; c < k; ++c) {
    if (sizes[static_cast<std::size_t>(c)] > 0) continue;
    Eigen::Index far = -1;
    double far_d = -1.0;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      const int own = labels[static_cast<std::size_t>(i)];
      if (sizes[static_cast<std::size_t>(own)] < 2) continue;
      const double d = (x.row(i) - centroids.row(own)).squaredNorm();
      if (d > far_d) {
        far_d = d;
        far = i;
      }
    }
    if (far < 0) continue;
    --sizes[static_cast<std::size_t>(labels[static_cast<std::size_t>(far)])];
    labels[static_cast<std::size_t>(far)] = static_cast<int>(c);
    sizes[static_cast<std::size_t>(c)] = 1;
    centroids.row(c) = x.row(far);
  }
}

}  // namespace

KMeansResult kmeans(const Eigen::MatrixXd& x, int k, std::uint64_t seed, int max_iter) {
  if (k < 1 || x.rows() < k) throw InvalidArgument("kmeans: need 1 <= k <= n");
  if (!x.allFinite()) throw InvalidArgument("kmeans: non-finite input");
  std::mt19937_64 rng(seed);
  KMeansResult r;
  r.centroids = kmeans_plus_plus(x, k, rng);
  std::vector<int> labels = nearest_centroid(x, r.centroids);
  r.inertia_history.push_back(inertia(x, r.centroids, labels));

  for (int it = 1; it <= max_iter; ++it) {
    reseed_empty(x, r.centroids, labels);
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, x.cols());
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(k);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      sums.row(labels[static_cast<std::size_t>(i)]) += x.row(i);
      counts(labels[static_cast<std::size_t>(i)]) += 1.0;
    }
    for (Eigen::Index c = 0; c < k; ++c) {
      if (counts(c) > 0.0) r.centroids.row(c) = sums.row(c) / counts(c);
    }
    std::vector<int> next = nearest_centroid(x, r.centroids);
    r.inertia_history.push_back(inertia(x, r.centroids, next));
    r.iterations = it;
    const bool unchanged = next == labels;
    labels = std::move(next);
    if (unchanged) break;
  }
  r.assignment.labels = std::move(labels);
  r.assignment.k = k;
  return r;
}

}  // namespace hoopstyle::clustering
