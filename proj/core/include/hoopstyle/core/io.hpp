#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hoopstyle/core/types.hpp"

namespace hoopstyle::io {

// segments.csv, long format: one row per frame with columns
//   player_id,t,x,y,ball_held,shot_frame,is_three[,made]
// Consecutive rows belong to one segment; the row with shot_frame=1 closes it.
std::vector<ShotSegment> read_segments(std::istream& in, const std::string& source);
std::vector<ShotSegment> read_segments_file(const std::string& path);
void write_segments(std::ostream& out, const std::vector<ShotSegment>& segments);

// playtypes.csv: player_id,season,<11 raw playtype keys>,ast_pct,usg_pct,
// games_played,minutes_per_game. An empty playtype cell is a missing value.
std::vector<PlaytypeProfile> read_profiles(std::istream& in, const std::string& source);
std::vector<PlaytypeProfile> read_profiles_file(const std::string& path);
void write_profiles(std::ostream& out, const std::vector<PlaytypeProfile>& profiles);

// lineups.csv: team,season,p1,p2,p3,p4,p5,minutes,offrtg,team_offrtg.
// Empty player cells are dropped, so short lineups survive parsing and are
// reported by validate_dataset.
std::vector<LineupRecord> read_lineups(std::istream& in, const std::string& source);
std::vector<LineupRecord> read_lineups_file(const std::string& path);
void write_lineups(std::ostream& out, const std::vector<LineupRecord>& lineups);

}  // namespace hoopstyle::io
