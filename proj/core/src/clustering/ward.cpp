#include "hoopstyle/clustering/ward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "hoopstyle/error.hpp"
#include "json.hpp"

namespace hoopstyle::clustering {

std::vector<int> HardAssignment::cluster_sizes() const {
  std::vector<int> sizes(std::max(k, 0), 0);
  for (int l : labels) {
    if (l >= 0 && l < k) ++sizes[l];
  }
  return sizes;
}

void HardAssignment::validate() const {
  for (int l : labels) {
    if (l < 0 || l >= k) throw InvalidArgument("cluster label out of range");
  }
  for (int s : cluster_sizes()) {
    if (s == 0) throw InvalidArgument("empty cluster in assignment");
  }
}

Dendrogram ward_linkage(const transport::DistanceMatrix& dm) {
  for (Eigen::Index i = 0; i < dm.values.size(); ++i) {
    if (std::isnan(dm.values.data()[i])) throw InvalidArgument("ward_linkage: NaN in distance matrix");
  }
  dm.validate();
  const int n = static_cast<int>(dm.size());
  if (n < 2) throw InvalidArgument("ward_linkage: need at least two points");

  Eigen::MatrixXd d2 = dm.values.cwiseProduct(dm.values);
  std::vector<bool> active(n, true);
  std::vector<int> size(n, 1);
  std::vector<int> node(n);
  std::iota(node.begin(), node.end(), 0);

  Dendrogram out;
  out.leaf_labels = dm.labels;
  out.merges.reserve(n - 1);

  // Each cluster lives in the slot of its smallest leaf, so scanning slots in
  // order realizes the lexicographic tie-break.
  for (int step = 0; step < n - 1; ++step) {
    int bi = -1;
    int bj = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (int j = i + 1; j < n; ++j) {
        if (!active[j]) continue;
        if (d2(i, j) < best) {
          best = d2(i, j);
          bi = i;
          bj = j;
        }
      }
    }

    const double ni = size[bi];
    const double nj = size[bj];
    for (int k = 0; k < n; ++k) {
      if (!active[k] || k == bi || k == bj) continue;
      const double nk = size[k];
      const double updated =
          ((ni + nk) * d2(bi, k) + (nj + nk) * d2(bj, k) - nk * best) / (ni + nj + nk);
      d2(bi, k) = updated;
      d2(k, bi) = updated;
    }

    Merge merge;
    merge.left = node[bi];
    merge.right = node[bj];
    merge.height = std::sqrt(std::max(best, 0.0));
    merge.size = size[bi] + size[bj];
    out.merges.push_back(merge);

    size[bi] = merge.size;
    node[bi] = n + step;
    active[bj] = false;
  }
  return out;
}

HardAssignment cut_dendrogram(const Dendrogram& dendrogram, int k) {
  const int n = dendrogram.n_leaves();
  if (k < 1 || k > n) {
    throw InvalidArgument("cut_dendrogram: k=" + std::to_string(k) + " outside [1, " +
                          std::to_string(n) + "]");
  }
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  // Any leaf of each internal node; enough to drive the union-find.
  std::vector<int> leaf_of(2 * n - 1);
  std::iota(leaf_of.begin(), leaf_of.begin() + n, 0);
  for (int t = 0; t < n - 1; ++t) {
    const Merge& m = dendrogram.merges[t];
    leaf_of[n + t] = leaf_of[m.left];
    if (t < n - k) {
      const int a = find(leaf_of[m.left]);
      const int b = find(leaf_of[m.right]);
      parent[std::max(a, b)] = std::min(a, b);
    }
  }

  // Roots are the smallest member of each component (min-union above).
  std::vector<int> root(n);
  std::vector<int> count(n, 0);
  for (int i = 0; i < n; ++i) {
    root[i] = find(i);
    ++count[root[i]];
  }
  std::vector<int> roots;
  for (int i = 0; i < n; ++i) {
    if (root[i] == i) roots.push_back(i);
  }
  std::stable_sort(roots.begin(), roots.end(), [&](int a, int b) {
    return count[a] > count[b];
  });
  std::vector<int> label_of_root(n, -1);
  for (std::size_t c = 0; c < roots.size(); ++c) {
    label_of_root[roots[c]] = static_cast<int>(c);
  }

  HardAssignment out;
  out.k = k;
  out.labels.resize(n);
  for (int i = 0; i < n; ++i) {
    out.labels[i] = label_of_root[root[i]];
  }
  return out;
}

std::string dendrogram_to_json(const Dendrogram& dendrogram) {
  nlohmann::json j;
  j["leaf_labels"] = dendrogram.leaf_labels;
  nlohmann::json merges = nlohmann::json::array();
  for (const auto& m : dendrogram.merges) {
    merges.push_back({{"left", m.left}, {"right", m.right}, {"height", m.height}, {"size", m.size}});
  }
  j["merges"] = merges;
  return j.dump(2);
}

}  // namespace hoopstyle::clustering
