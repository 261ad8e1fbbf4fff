#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace dirac {

inline constexpr const char* kVersion = "0.1.0";

/// Everything needed to rerun a CLI command and reproduce its output.
struct RunManifest {
  std::string command;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  std::map<std::string, std::uint64_t> seeds;
  /// Input path -> SHA-256 of its bytes.
  std::map<std::string, std::string> input_digests;
  std::string version = kVersion;

  void add_input(const std::filesystem::path& path);
  nlohmann::ordered_json to_json() const;
  /// Writes `<output>.manifest.json`.
  std::filesystem::path write_beside(const std::filesystem::path& output) const;
};

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& bytes);

} // namespace dirac
