#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hoopstyle/error.hpp"

namespace hoopstyle::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitConvergence = 3;

struct Options {
  std::string config_path;  // empty: built-in defaults
  std::string out_dir = ".";
  std::string data_dir;     // empty: same as out_dir
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  bool force = false;
  std::string source = "shots";  // shots | roles
  std::string mode = "combos2";  // counts5 | combos2
};

// Raised when the sampler did not converge and --force was not given.
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

void cmd_synth(const Options& o);
void cmd_features(const Options& o);
void cmd_cluster_shots(const Options& o);
void cmd_cluster_roles(const Options& o);
void cmd_build_design(const Options& o);
void cmd_fit(const Options& o);
void cmd_report(const Options& o);

}  // namespace hoopstyle::cli
