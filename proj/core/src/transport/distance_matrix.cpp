#include "hoopstyle/transport/distance_matrix.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "hoopstyle/error.hpp"
#include "hoopstyle/util/csv.hpp"

namespace hoopstyle::transport {

void DistanceMatrix::validate() const {
  const Eigen::Index n = values.rows();
  if (values.cols() != n || static_cast<Eigen::Index>(labels.size()) != n) {
    throw InvalidArgument("distance matrix must be square and labeled");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (values(i, i) != 0.0) throw InvalidArgument("distance matrix diagonal must be zero");
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = values(i, j);
      if (std::isnan(v)) throw InvalidArgument("distance matrix contains NaN");
      if (v < 0.0) throw InvalidArgument("distance matrix has a negative entry");
      if (v != values(j, i)) throw InvalidArgument("distance matrix is not symmetric");
    }
  }
}

DistanceMatrix pairwise_distance_matrix(std::span<const LabeledDistribution> players,
                                        const PairwiseOptions& options) {
  const std::size_t n = players.size();
  for (const auto& [label, dist] : players) {
    if (dist.size() < static_cast<Eigen::Index>(options.min_support)) {
      throw InvalidArgument("player '" + label + "' has " + std::to_string(dist.size()) +
                            " supports, fewer than the required " +
                            std::to_string(options.min_support));
    }
    dist.validate();
  }

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n - (n > 0)) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  }

  DistanceMatrix dm;
  dm.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& [label, dist] : players) dm.labels.push_back(label);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t k = next.fetch_add(1);
      if (k >= pairs.size()) return;
      const auto [i, j] = pairs[k];
      try {
        const double w = wasserstein_distance(players[i].second, players[j].second, options.p);
        dm.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = w;
        dm.values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = w;
      } catch (const std::exception& e) {
        std::lock_guard lock(failure_mutex);
        if (!failure) {
          failure = std::make_exception_ptr(SolverError("pair (" + players[i].first + ", " +
                                                        players[j].first + "): " + e.what()));
        }
        next.store(pairs.size());
        return;
      }
    }
  };

  const int threads = std::max(1, options.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return dm;
}

void write_distance_matrix(std::ostream& out, const DistanceMatrix& dm) {
  std::vector<std::string> header = {"label"};
  header.insert(header.end(), dm.labels.begin(), dm.labels.end());
  csv::write_row(out, header);
  for (Eigen::Index i = 0; i < dm.size(); ++i) {
    std::vector<std::string> row = {dm.labels[static_cast<std::size_t>(i)]};
    for (Eigen::Index j = 0; j < dm.size(); ++j) row.push_back(csv::format(dm.values(i, j)));
    csv::write_row(out, row);
  }
}

DistanceMatrix read_distance_matrix(std::istream& in, const std::string& source) {
  const csv::Table table = csv::read(in, source);
  DistanceMatrix dm;
  dm.labels.assign(table.header.begin() + 1, table.header.end());
  const auto n = static_cast<Eigen::Index>(dm.labels.size());
  if (static_cast<Eigen::Index>(table.rows.size()) != n) {
    throw ParseError(source, "distance matrix is not square");
  }
  dm.values.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (table.rows[static_cast<std::size_t>(i)][0] != dm.labels[static_cast<std::size_t>(i)]) {
      throw ParseError(table.locator(static_cast<std::size_t>(i)), "row label does not match header");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      dm.values(i, j) = csv::to_double(table, static_cast<std::size_t>(i), static_cast<std::size_t>(j + 1));
    }
  }
  return dm;
}

void write_plan(std::ostream& out, const TransportPlan& plan) {
  for (Eigen::Index i = 0; i < plan.plan.rows(); ++i) {
    std::vector<std::string> row;
    for (Eigen::Index j = 0; j < plan.plan.cols(); ++j) row.push_back(csv::format(plan.plan(i, j)));
    csv::write_row(out, row);
  }
}

}  // namespace hoopstyle::transport
