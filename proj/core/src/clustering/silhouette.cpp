#include "hoopstyle/clustering/silhouette.hpp"

#include <algorithm>
#include <limits>

#include "hoopstyle/error.hpp"

namespace hoopstyle::clustering {

std::vector<double> silhouette_samples(const transport::DistanceMatrix& dm,
                                       const HardAssignment& assignment) {
  const auto n = static_cast<std::size_t>(dm.size());
  if (assignment.labels.size() != n) throw InvalidArgument("silhouette: label count mismatch");
  if (assignment.k < 2) throw InvalidArgument("silhouette: need k >= 2");
  assignment.validate();

  const auto k = static_cast<std::size_t>(assignment.k);
  const std::vector<int> sizes = assignment.cluster_sizes();
  std::vector<double> s(n, 0.0);
  std::vector<double> sums(k);
  for (std::size_t i = 0; i < n; ++i) {
    const auto own = static_cast<std::size_t>(assignment.labels[i]);
    if (sizes[own] == 1) continue;
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      sums[static_cast<std::size_t>(assignment.labels[j])] +=
          dm.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    const double a = sums[own] / (sizes[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c) {
      if (c != own) b = std::min(b, sums[c] / sizes[c]);
    }
    const double denom = std::max(a, b);
    s[i] = denom > 0.0 ? (b - a) / denom : 0.0;
  }
  return s;
}

double silhouette_mean(const transport::DistanceMatrix& dm, const HardAssignment& assignment) {
  const auto s = silhouette_samples(dm, assignment);
  double total = 0.0;
  for (double v : s) total += v;
  return s.empty() ? 0.0 : total / static_cast<double>(s.size());
}

std::vector<SilhouettePoint> silhouette_sweep(const transport::DistanceMatrix& dm,
                                              const Dendrogram& dendrogram, int k_min,
                                              int k_max) {
  const int n = dendrogram.n_leaves();
  if (k_min < 2) throw InvalidArgument("silhouette_sweep: k_min must be >= 2");
  if (k_min > n) throw InvalidArgument("silhouette_sweep: k_min exceeds the number of points");
  std::vector<SilhouettePoint> out;
  for (int k = k_min; k <= std::min(k_max, n); ++k) {
    out.push_back({k, silhouette_mean(dm, cut_dendrogram(dendrogram, k))});
  }
  return out;
}

int silhouette_argmax(const std::vector<SilhouettePoint>& sweep) {
  if (sweep.empty()) throw InvalidArgument("silhouette_argmax: empty sweep");
  SilhouettePoint best = sweep.front();
  for (const auto& p : sweep) {
    if (p.mean > best.mean) best = p;
  }
  return best.k;
}

}  // namespace hoopstyle::clustering
