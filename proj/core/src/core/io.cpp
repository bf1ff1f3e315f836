#include "hoopstyle/core/io.hpp"

#include <fstream>
#include <ostream>

#include "hoopstyle/error.hpp"
#include "hoopstyle/util/csv.hpp"

namespace hoopstyle::io {

namespace {

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  return in;
}

}  // namespace

std::vector<ShotSegment> read_segments(std::istream& in, const std::string& source) {
  const csv::Table table = csv::read(in, source);
  const auto c_player = table.column("player_id");
  const auto c_t = table.column("t");
  const auto c_x = table.column("x");
  const auto c_y = table.column("y");
  const auto c_held = table.column("ball_held");
  const auto c_shot = table.column("shot_frame");
  const auto c_three = table.column("is_three");
  const bool has_made = table.has_column("made");
  const auto c_made = has_made ? table.column("made") : 0;

  std::vector<ShotSegment> segments;
  ShotSegment current;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const std::string& player = table.rows[r][c_player];
    if (!current.frames.empty() && player != current.player_id) {
      throw ParseError(table.locator(r), "segment for '" + current.player_id +
                                             "' ends without a shot_frame row");
    }
    current.player_id = player;
    Frame f;
    f.t = csv::to_double(table, r, c_t);
    f.shooter = {csv::to_double(table, r, c_x), csv::to_double(table, r, c_y)};
    f.ball_held = csv::to_bool(table, r, c_held);
    current.frames.push_back(f);
    if (csv::to_bool(table, r, c_shot)) {
      current.is_three = csv::to_bool(table, r, c_three);
      current.made_shot = has_made && csv::to_bool(table, r, c_made);
      segments.push_back(std::move(current));
      current = ShotSegment{};
    }
  }
  if (!current.frames.empty()) {
    throw ParseError(source + ":" + std::to_string(table.line_numbers.back()),
                     "trailing segment without a shot_frame row");
  }
  return segments;
}

std::vector<ShotSegment> read_segments_file(const std::string& path) {
  auto in = open(path);
  return read_segments(in, path);
}

void write_segments(std::ostream& out, const std::vector<ShotSegment>& segments) {
  csv::write_row(out, {"player_id", "t", "x", "y", "ball_held", "shot_frame", "is_three", "made"});
  for (const auto& s : segments) {
    for (std::size_t i = 0; i < s.frames.size(); ++i) {
      const Frame& f = s.frames[i];
      const bool shot = i + 1 == s.frames.size();
      csv::write_row(out, {s.player_id, csv::format(f.t), csv::format(f.shooter.x),
                           csv::format(f.shooter.y), f.ball_held ? "1" : "0", shot ? "1" : "0",
                           s.is_three ? "1" : "0", s.made_shot ? "1" : "0"});
    }
  }
}

std::vector<PlaytypeProfile> read_profiles(std::istream& in, const std::string& source) {
  const csv::Table table = csv::read(in, source);
  const auto c_player = table.column("player_id");
  const auto c_season = table.column("season");
  std::array<std::size_t, kNumRawPlaytypes> c_pct{};
  for (std::size_t k = 0; k < kNumRawPlaytypes; ++k) c_pct[k] = table.column(kRawPlaytypeKeys[k]);
  const auto c_ast = table.column("ast_pct");
  const auto c_usg = table.column("usg_pct");
  const auto c_games = table.column("games_played");
  const auto c_mpg = table.column("minutes_per_game");

  std::vector<PlaytypeProfile> profiles;
  profiles.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    PlaytypeProfile p;
    p.player_id = table.rows[r][c_player];
    p.season = table.rows[r][c_season];
    for (std::size_t k = 0; k < kNumRawPlaytypes; ++k) {
      if (!table.rows[r][c_pct[k]].empty()) p.playtype_pct[k] = csv::to_double(table, r, c_pct[k]);
    }
    p.ast_pct = csv::to_double(table, r, c_ast);
    p.usg_pct = csv::to_double(table, r, c_usg);
    p.games_played = static_cast<int>(csv::to_int(table, r, c_games));
    p.minutes_per_game = csv::to_double(table, r, c_mpg);
    profiles.push_back(std::move(p));
  }
  return profiles;
}

std::vector<PlaytypeProfile> read_profiles_file(const std::string& path) {
  auto in = open(path);
  return read_profiles(in, path);
}

void write_profiles(std::ostream& out, const std::vector<PlaytypeProfile>& profiles) {
  std::vector<std::string> header = {"player_id", "season"};
  for (auto key : kRawPlaytypeKeys) header.emplace_back(key);
  for (const char* key : {"ast_pct", "usg_pct", "games_played", "minutes_per_game"}) {
    header.emplace_back(key);
  }
  csv::write_row(out, header);
  for (const auto& p : profiles) {
    std::vector<std::string> row = {p.player_id, p.season};
    for (const auto& v : p.playtype_pct) row.push_back(v ? csv::format(*v) : std::string());
    row.push_back(csv::format(p.ast_pct));
    row.push_back(csv::format(p.usg_pct));
    row.push_back(std::to_string(p.games_played));
    row.push_back(csv::format(p.minutes_per_game));
    csv::write_row(out, row);
  }
}

std::vector<LineupRecord> read_lineups(std::istream& in, const std::string& source) {
  const csv::Table table = csv::read(in, source);
  const auto c_team = table.column("team");
  const auto c_season = table.column("season");
  const std::array<std::size_t, 5> c_players = {table.column("p1"), table.column("p2"),
                                                table.column("p3"), table.column("p4"),
                                                table.column("p5")};
  const auto c_min = table.column("minutes");
  const auto c_off = table.column("offrtg");
  const auto c_team_off = table.column("team_offrtg");

  std::vector<LineupRecord> lineups;
  lineups.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    LineupRecord l;
    l.team = table.rows[r][c_team];
    l.season = table.rows[r][c_season];
    for (auto c : c_players) {
      if (!table.rows[r][c].empty()) l.player_ids.push_back(table.rows[r][c]);
    }
    l.minutes = csv::to_double(table, r, c_min);
    l.offrtg = csv::to_double(table, r, c_off);
    l.team_offrtg = csv::to_double(table, r, c_team_off);
    lineups.push_back(std::move(l));
  }
  return lineups;
}

std::vector<LineupRecord> read_lineups_file(const std::string& path) {
  auto in = open(path);
  return read_lineups(in, path);
}

void write_lineups(std::ostream& out, const std::vector<LineupRecord>& lineups) {
  csv::write_row(out, {"team", "season", "p1", "p2", "p3", "p4", "p5", "minutes", "offrtg",
                       "team_offrtg"});
  for (const auto& l : lineups) {
    std::vector<std::string> row = {l.team, l.season};
    for (std::size_t i = 0; i < 5; ++i) {
      row.push_back(i < l.player_ids.size() ? l.player_ids[i] : std::string());
    }
    row.push_back(csv::format(l.minutes));
    row.push_back(csv::format(l.offrtg));
    row.push_back(csv::format(l.team_offrtg));
    csv::write_row(out, row);
  }
}

}  // namespace hoopstyle::io
