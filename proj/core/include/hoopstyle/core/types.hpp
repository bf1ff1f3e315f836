#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hoopstyle {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Offensive possession categories as annotated in the raw playtype table.
enum class Playtype : std::size_t {
  kPickAndRollBallHandler = 0,
  kPickAndRollRollMan,
  kTransition,
  kOffScreen,
  kSpotUp,
  kIsolation,
  kHandOff,
  kCut,
  kPutback,
  kPostUp,
  kMiscellaneous,
};

inline constexpr std::size_t kNumRawPlaytypes = 11;
// Off-screen and Hand-off are summed into one component downstream.
inline constexpr std::size_t kNumMergedPlaytypes = 10;

// Column keys used in playtypes.csv, in enum order.
inline constexpr std::array<std::string_view, kNumRawPlaytypes> kRawPlaytypeKeys = {
    "pr_ball_handler", "pr_roll_man", "transition", "off_screen",
    "spot_up",         "isolation",   "hand_off",   "cut",
    "putback",         "post_up",     "misc"};

// Merged layout: off_screen absorbs hand_off.
inline constexpr std::array<std::string_view, kNumMergedPlaytypes> kMergedPlaytypeKeys = {
    "pr_ball_handler", "pr_roll_man", "transition", "off_screen_hand_off",
    "spot_up",         "isolation",   "cut",        "putback",
    "post_up",         "misc"};

// One frame of tracking data inside a shot segment.
struct Frame {
  double t = 0.0;  // seconds
  Point2 shooter;  // meters
  bool ball_held = false;
};

// Tracking window for one shot: frames ordered by time, last frame is the
// shot release.
struct ShotSegment {
  std::string player_id;
  std::vector<Frame> frames;
  bool is_three = false;
  bool made_shot = false;

  double shot_time() const { return frames.back().t; }
  // Start of the final contiguous ball-held run ending at the shot frame.
  // Falls back to the shot time when the shooter does not hold the ball at
  // release.
  double ball_received_time() const;
};

struct PlaytypeProfile {
  std::string player_id;
  std::string season;
  // Raw percentages; std::nullopt marks a missing (unrecorded) entry.
  std::array<std::optional<double>, kNumRawPlaytypes> playtype_pct{};
  double ast_pct = 0.0;
  double usg_pct = 0.0;
  int games_played = 0;
  double minutes_per_game = 0.0;
};

struct LineupRecord {
  std::string team;
  std::string season;
  std::vector<std::string> player_ids;  // exactly five when valid
  double minutes = 0.0;
  double offrtg = 0.0;
  double team_offrtg = 0.0;

  // Stable key used for row ordering and file output.
  std::string key() const;
};

}  // namespace hoopstyle
