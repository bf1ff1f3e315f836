#include "hoopstyle/core/types.hpp"

namespace hoopstyle {

double ShotSegment::ball_received_time() const {
  if (frames.empty()) return 0.0;
  std::size_t i = frames.size();
  while (i > 0 && frames[i - 1].ball_held) --i;
  return i == frames.size() ? frames.back().t : frames[i].t;
}

std::string LineupRecord::key() const {
  std::string key;
  for (std::size_t i = 0; i < player_ids.size(); ++i) {
    if (i) key += '|';
    key += player_ids[i];
  }
  return key;
}

}  // namespace hoopstyle
