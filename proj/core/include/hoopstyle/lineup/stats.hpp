#pragma once

namespace hoopstyle::lineup {

// Shrinks a lineup's rating toward its team's rating when it played fewer
// than `horizon` minutes.
double adjust_offrtg(double lineup_offrtg, double minutes, double team_offrtg,
                     double horizon = 300.0);

// PTS / (2 (FGA + 0.44 FTA)) * 100
double true_shooting_pct(double pts, double fga, double fta);

// PTS / (FGA + 0.44 FTA + TO)
double points_per_possession(double pts, double fga, double fta, double to);

}  // namespace hoopstyle::lineup
