#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "hoopstyle/transport/emd.hpp"

namespace hoopstyle::transport {

struct DistanceMatrix {
  std::vector<std::string> labels;
  Eigen::MatrixXd values;  // symmetric, zero diagonal, non-negative

  Eigen::Index size() const { return values.rows(); }
  // Throws InvalidArgument if the invariants above do not hold exactly.
  void validate() const;
};

using LabeledDistribution = std::pair<std::string, EmpiricalDistribution>;

struct PairwiseOptions {
  double p = 1.0;
  int threads = 1;
  // Each player needs at least this many supports.
  int min_support = 1;
};

// W_p for every unordered pair, each solved once and mirrored. Work is
// spread over `threads` workers; the result does not depend on scheduling.
DistanceMatrix pairwise_distance_matrix(std::span<const LabeledDistribution> players,
                                        const PairwiseOptions& options = {});

// distance_matrix.csv: header "label,<l_1>,...,<l_n>", then one row per
// label. Values use shortest round-trip formatting.
void write_distance_matrix(std::ostream& out, const DistanceMatrix& dm);
DistanceMatrix read_distance_matrix(std::istream& in, const std::string& source);

void write_plan(std::ostream& out, const TransportPlan& plan);

}  // namespace hoopstyle::transport
