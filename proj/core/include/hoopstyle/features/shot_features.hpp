#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string_view>

#include <Eigen/Core>

#include "hoopstyle/core/types.hpp"

namespace hoopstyle::features {

inline constexpr std::size_t kNumShotFeatures = 17;

// Column layout of a shot feature vector. The first six are court
// coordinates; the rest are distances (m), speed (m/s) and time (s).
enum ShotFeature : std::size_t {
  kShotX = 0,
  kShotY,
  kOneSecondBeforeX,
  kOneSecondBeforeY,
  kReceptionX,
  kReceptionY,
  kRimDistanceLag0,  // followed by lags 0.5 .. 3.0 s
  kRimDistanceAtReception = kRimDistanceLag0 + 7,
  kDistanceWithBall,
  kSpeedAtShot,
  kBallHoldTime,
};
static_assert(kBallHoldTime + 1 == kNumShotFeatures);

inline constexpr std::size_t kNumCoordinateFeatures = 6;
inline constexpr std::array<double, 7> kRimDistanceLags = {0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0};

extern const std::array<std::string_view, kNumShotFeatures> kShotFeatureNames;

using ShotFeatureVector = std::array<double, kNumShotFeatures>;

// Lagged positions are linearly interpolated between frames; speed uses the
// second-order one-sided difference at the release frame (segments end at
// the shot, so there is no frame after it). Throws FeatureExtractionError
// when a required lag is not covered by the segment.
ShotFeatureVector extract_shot_features(const ShotSegment& segment, Point2 rim);

// One row per segment, in input order.
Eigen::MatrixXd extract_feature_matrix(std::span<const ShotSegment> segments, Point2 rim);

}  // namespace hoopstyle::features
