#include "hoopstyle/core/validate.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace hoopstyle {

namespace {

constexpr double kTimeTol = 1e-9;
constexpr double kPctTol = 1e-6;

void check_segment(const ShotSegment& s, std::size_t index, std::vector<Violation>& out) {
  auto add = [&](const char* rule, std::string detail) {
    out.push_back({RecordKind::kSegment, index, rule, std::move(detail)});
  };
  if (s.player_id.empty()) add("segment.player_id", "empty player id");
  if (s.frames.size() < 2) {
    add("segment.frames", "fewer than two frames");
    return;
  }
  bool finite = true;
  for (const auto& f : s.frames) {
    finite = finite && std::isfinite(f.t) && std::isfinite(f.shooter.x) &&
             std::isfinite(f.shooter.y);
  }
  if (!finite) {
    add("segment.non_finite", "non-finite time or coordinate");
    return;
  }
  double max_gap = 0.0;
  for (std::size_t i = 1; i < s.frames.size(); ++i) {
    const double dt = s.frames[i].t - s.frames[i - 1].t;
    if (!(dt > 0.0)) {
      add("segment.timestamps_increasing",
          "timestamp " + std::to_string(i) + " does not increase");
      return;
    }
    max_gap = std::max(max_gap, dt);
  }
  const double span = s.frames.back().t - s.frames.front().t;
  if (span < kMinSegmentSpanSeconds - kTimeTol) {
    std::ostringstream msg;
    msg << "span " << span << " s < " << kMinSegmentSpanSeconds << " s";
    add("segment.min_span", msg.str());
  }
  // 10 Hz nominal with one frame of slack, both in total count and per gap.
  const double expected_intervals = span * kNominalFrameRateHz;
  const double intervals = static_cast<double>(s.frames.size() - 1);
  if (std::abs(intervals - expected_intervals) > 1.0 + kTimeTol ||
      max_gap > 2.0 / kNominalFrameRateHz + kTimeTol) {
    std::ostringstream msg;
    msg << s.frames.size() << " frames over " << span << " s (max gap " << max_gap << " s)";
    add("segment.sampling_rate", msg.str());
  }
}

void check_profile(const PlaytypeProfile& p, std::size_t index, std::vector<Violation>& out) {
  auto add = [&](const char* rule, std::string detail) {
    out.push_back({RecordKind::kProfile, index, rule, std::move(detail)});
  };
  if (p.player_id.empty()) add("profile.player_id", "empty player id");
  double known = 0.0;
  std::size_t missing = 0;
  bool in_range = true;
  for (std::size_t k = 0; k < kNumRawPlaytypes; ++k) {
    if (!p.playtype_pct[k]) {
      ++missing;
      continue;
    }
    const double v = *p.playtype_pct[k];
    in_range = in_range && std::isfinite(v) && v >= 0.0 && v <= 100.0;
    known += v;
  }
  for (double v : {p.ast_pct, p.usg_pct}) {
    in_range = in_range && std::isfinite(v) && v >= 0.0 && v <= 100.0;
  }
  if (!in_range) add("profile.range", "percentage outside [0, 100]");
  if (known > 100.0 + kPctTol) {
    add("profile.sum", "known playtype percentages sum to " + std::to_string(known));
  } else if (missing == 0 && std::abs(known - 100.0) > kPctTol) {
    add("profile.sum", "complete playtype percentages sum to " + std::to_string(known));
  }
  if (p.games_played < 0 || !(p.minutes_per_game >= 0.0)) {
    add("profile.games", "negative games or minutes");
  }
}

void check_lineup(const LineupRecord& l, std::size_t index, std::vector<Violation>& out) {
  auto add = [&](const char* rule, std::string detail) {
    out.push_back({RecordKind::kLineup, index, rule, std::move(detail)});
  };
  if (l.player_ids.size() != 5) {
    add("lineup.player_count", std::to_string(l.player_ids.size()) + " players");
  }
  std::set<std::string> distinct(l.player_ids.begin(), l.player_ids.end());
  if (distinct.size() != l.player_ids.size()) add("lineup.distinct_players", "duplicate player");
  if (!(l.minutes > 0.0) || !std::isfinite(l.minutes)) {
    add("lineup.minutes", "minutes must be positive and finite");
  }
  if (!std::isfinite(l.offrtg) || !std::isfinite(l.team_offrtg)) {
    add("lineup.offrtg", "non-finite rating");
  }
}

}  // namespace

const char* to_string(RecordKind kind) {
  switch (kind) {
    case RecordKind::kSegment: return "segment";
    case RecordKind::kProfile: return "profile";
    case RecordKind::kLineup: return "lineup";
  }
  return "?";
}

bool ValidationReport::has(const std::string& rule) const {
  for (const auto& v : violations) {
    if (v.rule == rule) return true;
  }
  return false;
}

std::string ValidationReport::summary() const {
  std::ostringstream out;
  for (const auto& v : violations) {
    out << to_string(v.kind) << "[" << v.index << "] " << v.rule << ": " << v.detail << "\n";
  }
  return out.str();
}

ValidationReport validate_dataset(std::span<const ShotSegment> segments,
                                  std::span<const PlaytypeProfile> profiles,
                                  std::span<const LineupRecord> lineups) {
  ValidationReport report;
  for (std::size_t i = 0; i < segments.size(); ++i) check_segment(segments[i], i, report.violations);
  for (std::size_t i = 0; i < profiles.size(); ++i) check_profile(profiles[i], i, report.violations);
  for (std::size_t i = 0; i < lineups.size(); ++i) check_lineup(lineups[i], i, report.violations);
  return report;
}

}  // namespace hoopstyle
