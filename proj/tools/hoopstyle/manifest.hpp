#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace hoopstyle::cli {

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

// Record of one stage run: what went in, what came out, and their hashes.
// Paths are stored by file name so runs in different directories compare
// equal.
class RunManifest {
 public:
  RunManifest(std::string command, std::uint64_t seed, const std::string& config_json);
  void add_input(const std::filesystem::path& path);
  void add_output(const std::filesystem::path& path);
  // Writes manifest_<command>.json into `dir`.
  std::filesystem::path write(const std::filesystem::path& dir) const;

 private:
  struct Entry {
    std::string name;
    std::string sha256;
  };
  std::string command_;
  std::uint64_t seed_;
  std::string config_hash_;
  std::vector<Entry> inputs_;
  std::vector<Entry> outputs_;
};

}  // namespace hoopstyle::cli
