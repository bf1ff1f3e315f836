#include "hoopstyle/lineup/merge.hpp"

#include "json.hpp"

#include "hoopstyle/error.hpp"

namespace hoopstyle::lineup {

void MergeMap::validate() const {
  if (target_names.empty()) throw InvalidArgument("merge map has no targets");
  if (!source_names.empty() && source_names.size() != target_of.size()) {
    throw InvalidArgument("merge map: source name count mismatch");
  }
  std::vector<bool> hit(target_names.size(), false);
  for (std::size_t s = 0; s < target_of.size(); ++s) {
    const int t = target_of[s];
    if (t < 0 || t >= n_target()) {
      throw InvalidArgument("merge map: source " + std::to_string(s) + " maps out of range");
    }
    hit[static_cast<std::size_t>(t)] = true;
  }
  for (std::size_t t = 0; t < hit.size(); ++t) {
    if (!hit[t]) throw InvalidArgument("merge map: target '" + target_names[t] + "' is unused");
  }
}

MergeMap identity_merge_map(int n) {
  MergeMap m;
  for (int i = 0; i < n; ++i) {
    m.source_names.push_back(std::to_string(i));
    m.target_names.push_back(std::to_string(i));
    m.target_of.push_back(i);
  }
  return m;
}

MergeMap default_shot_merge_map() {
  MergeMap m;
  m.source_names = {"CB", "MB", "MA", "MS", "OA", "PH", "DH",
                    "S4", "CS", "PS", "OS", "DS", "SA"};
  m.target_names = {"Close-range", "Mid-range", "All-rounder", "Ball-handler", "3point-shooter"};
  m.target_of = {0, 1, 1, 1, 2, 3, 3, 4, 4, 4, 3, 4, 2};
  return m;
}

clustering::HardAssignment merge_clusters(const clustering::HardAssignment& a,
                                          const MergeMap& m) {
  m.validate();
  if (a.k != m.n_source()) throw InvalidArgument("merge: assignment k does not match map");
  clustering::HardAssignment out;
  out.k = m.n_target();
  out.labels.reserve(a.labels.size());
  for (int l : a.labels) {
    if (l < 0 || l >= m.n_source()) {
      throw InvalidArgument("merge: unmapped label " + std::to_string(l));
    }
    out.labels.push_back(m.target_of[static_cast<std::size_t>(l)]);
  }
  return out;
}

clustering::MembershipMatrix merge_clusters(const clustering::MembershipMatrix& u,
                                            const MergeMap& m) {
  m.validate();
  if (u.c() != m.n_source()) throw InvalidArgument("merge: membership width does not match map");
  clustering::MembershipMatrix out;
  out.u = Eigen::MatrixXd::Zero(u.n(), m.n_target());
  for (Eigen::Index s = 0; s < u.c(); ++s) {
    out.u.col(m.target_of[static_cast<std::size_t>(s)]) += u.u.col(s);
  }
  return out;
}

std::string merge_map_to_json(const MergeMap& m) {
  nlohmann::ordered_json j;
  j["source_names"] = m.source_names;
  j["target_names"] = m.target_names;
  j["target_of"] = m.target_of;
  return j.dump(2) + "\n";
}

MergeMap merge_map_from_json(std::string_view text) {
  MergeMap m;
  try {
    const auto j = nlohmann::json::parse(text);
    for (const auto& [key, value] : j.items()) {
      if (key != "source_names" && key != "target_names" && key != "target_of") {
        throw ConfigError("merge map: unknown key '" + key + "'");
      }
    }
    m.target_names = j.at("target_names").get<std::vector<std::string>>();
    m.target_of = j.at("target_of").get<std::vector<int>>();
    if (j.contains("source_names")) {
      m.source_names = j.at("source_names").get<std::vector<std::string>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("merge map: ") + e.what());
  }
  try {
    m.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return m;
}

}  // namespace hoopstyle::lineup
