#include "hoopstyle/manifest.hpp"

#include <array>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "hoopstyle/error.hpp"
#include "json.hpp"

namespace hoopstyle::cli {

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 failed");
  }
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) {
    out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return out.str();
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return sha256_hex(buf.str());
}

RunManifest::RunManifest(std::string command, std::uint64_t seed, const std::string& config_json)
    : command_(std::move(command)), seed_(seed), config_hash_(sha256_hex(config_json)) {}

void RunManifest::add_input(const std::filesystem::path& path) {
  inputs_.push_back({path.filename().string(), sha256_file(path)});
}

void RunManifest::add_output(const std::filesystem::path& path) {
  outputs_.push_back({path.filename().string(), sha256_file(path)});
}

std::filesystem::path RunManifest::write(const std::filesystem::path& dir) const {
  nlohmann::ordered_json j;
  j["tool"] = "hoopstyle";
  j["version"] = HOOPSTYLE_VERSION;
  j["command"] = command_;
  j["seed"] = seed_;
  j["config_sha256"] = config_hash_;
  auto list = [](const std::vector<Entry>& entries) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& e : entries) arr.push_back({{"path", e.name}, {"sha256", e.sha256}});
    return arr;
  };
  j["inputs"] = list(inputs_);
  j["outputs"] = list(outputs_);
  const auto path = dir / ("manifest_" + command_ + ".json");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << j.dump(2) << "\n";
  return path;
}

}  // namespace hoopstyle::cli
