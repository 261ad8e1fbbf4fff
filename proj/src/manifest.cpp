#include "dirac/manifest.hpp"

#include <openssl/evp.h>

#include "dirac/error.hpp"
#include "dirac/io.hpp"

namespace dirac {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

void RunManifest::add_input(const std::filesystem::path& path) {
  input_digests[path.string()] = sha256_hex(io::read_text_file(path));
}

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["version"] = version;
  j["parameters"] = parameters;
  j["seeds"] = nlohmann::ordered_json::object();
  for (const auto& [name, seed] : seeds) j["seeds"][name] = seed;
  j["inputs"] = nlohmann::ordered_json::object();
  for (const auto& [path, digest] : input_digests) j["inputs"][path] = {{"sha256", digest}};
  return j;
}

std::filesystem::path RunManifest::write_beside(const std::filesystem::path& output) const {
  std::filesystem::path path = output;
  path += ".manifest.json";
  io::write_text_file(path, to_json().dump(2) + "\n");
  return path;
}

} // namespace dirac
