#include "hoopstyle/lineup/stats.hpp"

#include <cmath>

#include "hoopstyle/error.hpp"

namespace hoopstyle::lineup {

double adjust_offrtg(double lineup_offrtg, double minutes, double team_offrtg, double horizon) {
  if (!(minutes > 0.0)) throw InvalidArgument("adjust_offrtg: minutes must be positive");
  if (!(horizon > 0.0)) throw InvalidArgument("adjust_offrtg: horizon must be positive");
  if (minutes >= horizon) return lineup_offrtg;
  const double w = minutes / horizon;
  return lineup_offrtg * w + team_offrtg * (1.0 - w);
}

double true_shooting_pct(double pts, double fga, double fta) {
  const double attempts = fga + 0.44 * fta;
  if (!(attempts > 0.0)) throw InvalidArgument("true shooting: no shot attempts");
  return pts / (2.0 * attempts) * 100.0;
}

double points_per_possession(double pts, double fga, double fta, double to) {
  const double possessions = fga + 0.44 * fta + to;
  if (!(possessions > 0.0)) throw InvalidArgument("points per possession: no possessions");
  return pts / possessions;
}

}  // namespace hoopstyle::lineup
