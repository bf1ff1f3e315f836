#include "hoopstyle/features/shot_features.hpp"

#include <cmath>
#include <sstream>

#include "hoopstyle/error.hpp"

namespace hoopstyle::features {

const std::array<std::string_view, kNumShotFeatures> kShotFeatureNames = {
    "shot_x",         "shot_y",         "x_1s_before",      "y_1s_before",
    "reception_x",    "reception_y",    "rim_dist_0_0",     "rim_dist_0_5",
    "rim_dist_1_0",   "rim_dist_1_5",   "rim_dist_2_0",     "rim_dist_2_5",
    "rim_dist_3_0",   "rim_dist_reception", "dist_with_ball", "speed_at_shot",
    "ball_hold_time"};

namespace {

constexpr double kTimeTol = 1e-9;

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

Point2 position_at(const ShotSegment& s, double t, std::string_view what) {
  const auto& f = s.frames;
  if (t < f.front().t - kTimeTol || t > f.back().t + kTimeTol) {
    std::ostringstream msg;
    msg << "segment of '" << s.player_id << "' does not cover " << what << " (t=" << t
        << ", window [" << f.front().t << ", " << f.back().t << "])";
    throw FeatureExtractionError(msg.str());
  }
  if (t <= f.front().t) return f.front().shooter;
  if (t >= f.back().t) return f.back().shooter;
  // First frame strictly after t.
  std::size_t hi = 1;
  while (f[hi].t <= t) ++hi;
  const Frame& a = f[hi - 1];
  const Frame& b = f[hi];
  const double w = (t - a.t) / (b.t - a.t);
  return {a.shooter.x + w * (b.shooter.x - a.shooter.x),
          a.shooter.y + w * (b.shooter.y - a.shooter.y)};
}

double path_length(const ShotSegment& s, double from) {
  const auto& f = s.frames;
  Point2 prev = position_at(s, from, "ball reception");
  double total = 0.0;
  for (const Frame& frame : f) {
    if (frame.t <= from) continue;
    total += distance(prev, frame.shooter);
    prev = frame.shooter;
  }
  return total;
}

double release_speed(const ShotSegment& s) {
  const auto& f = s.frames;
  const std::size_t n = f.size();
  const Frame& x0 = f[n - 1];
  const Frame& x1 = f[n - 2];
  if (n == 2) {
    const double h = x0.t - x1.t;
    return distance(x0.shooter, x1.shooter) / h;
  }
  const Frame& x2 = f[n - 3];
  const double h1 = x0.t - x1.t;
  const double h2 = x1.t - x2.t;
  const double c0 = (2.0 * h1 + h2) / (h1 * (h1 + h2));
  const double c1 = -(h1 + h2) / (h1 * h2);
  const double c2 = h1 / (h2 * (h1 + h2));
  const double vx = c0 * x0.shooter.x + c1 * x1.shooter.x + c2 * x2.shooter.x;
  const double vy = c0 * x0.shooter.y + c1 * x1.shooter.y + c2 * x2.shooter.y;
  return std::hypot(vx, vy);
}

}  // namespace

ShotFeatureVector extract_shot_features(const ShotSegment& segment, Point2 rim) {
  if (segment.frames.size() < 2) {
    throw FeatureExtractionError("segment of '" + segment.player_id + "' has fewer than 2 frames");
  }
  const double t_shot = segment.shot_time();
  const double t_recv = segment.ball_received_time();

  ShotFeatureVector v{};
  const Point2 at_shot = segment.frames.back().shooter;
  const Point2 before = position_at(segment, t_shot - 1.0, "lag 1.0 s");
  const Point2 at_recv = position_at(segment, t_recv, "ball reception");
  v[kShotX] = at_shot.x;
  v[kShotY] = at_shot.y;
  v[kOneSecondBeforeX] = before.x;
  v[kOneSecondBeforeY] = before.y;
  v[kReceptionX] = at_recv.x;
  v[kReceptionY] = at_recv.y;
  for (std::size_t i = 0; i < kRimDistanceLags.size(); ++i) {
    std::ostringstream what;
    what << "lag " << kRimDistanceLags[i] << " s";
    v[kRimDistanceLag0 + i] = distance(position_at(segment, t_shot - kRimDistanceLags[i], what.str()), rim);
  }
  v[kRimDistanceAtReception] = distance(at_recv, rim);
  v[kDistanceWithBall] = path_length(segment, t_recv);
  v[kSpeedAtShot] = release_speed(segment);
  v[kBallHoldTime] = t_shot - t_recv;
  return v;
}

Eigen::MatrixXd extract_feature_matrix(std::span<const ShotSegment> segments, Point2 rim) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(segments.size()), kNumShotFeatures);
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto v = extract_shot_features(segments[i], rim);
    for (std::size_t j = 0; j < kNumShotFeatures; ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v[j];
    }
  }
  return out;
}

}  // namespace hoopstyle::features
