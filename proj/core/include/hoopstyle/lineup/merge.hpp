#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hoopstyle/clustering/types.hpp"

namespace hoopstyle::lineup {

// Surjective relabeling of source clusters onto a smaller set of groups.
struct MergeMap {
  std::vector<std::string> source_names;
  std::vector<std::string> target_names;
  std::vector<int> target_of;  // indexed by source label

  int n_source() const { return static_cast<int>(target_of.size()); }
  int n_target() const { return static_cast<int>(target_names.size()); }
  // Throws InvalidArgument unless every source maps into range and every
  // target is hit.
  void validate() const;
};

MergeMap identity_merge_map(int n);

// 13 shooting-style clusters onto Close-range, Mid-range, All-rounder,
// Ball-handler and 3point-shooter.
MergeMap default_shot_merge_map();

clustering::HardAssignment merge_clusters(const clustering::HardAssignment& a,
                                          const MergeMap& m);
clustering::MembershipMatrix merge_clusters(const clustering::MembershipMatrix& u,
                                            const MergeMap& m);

std::string merge_map_to_json(const MergeMap& m);
MergeMap merge_map_from_json(std::string_view text);

}  // namespace hoopstyle::lineup
