#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hoopstyle/core/types.hpp"

namespace hoopstyle {

enum class RecordKind { kSegment, kProfile, kLineup };

struct Violation {
  RecordKind kind;
  std::size_t index;  // position in the list passed to validate_dataset
  std::string rule;   // stable id, e.g. "lineup.player_count"
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool accepted() const { return violations.empty(); }
  bool has(const std::string& rule) const;
  std::string summary() const;
};

inline constexpr double kMinSegmentSpanSeconds = 3.0;
inline constexpr double kNominalFrameRateHz = 10.0;

ValidationReport validate_dataset(std::span<const ShotSegment> segments,
                                  std::span<const PlaytypeProfile> profiles,
                                  std::span<const LineupRecord> lineups);

const char* to_string(RecordKind kind);

}  // namespace hoopstyle
