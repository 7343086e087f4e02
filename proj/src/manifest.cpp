#include "semmap/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "semmap/errors.hpp"

namespace semmap {

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t hash_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string data = ss.str();
  return fnv1a64(data.data(), data.size());
}

std::string hash_hex(std::uint64_t h) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

void save_manifest(const RunManifest& manifest, const std::string& path) {
  nlohmann::json j = {{"config_hash", manifest.config_hash},
                      {"engine_version", manifest.engine_version},
                      {"inputs", manifest.inputs},
                      {"outputs", manifest.output_hashes},
                      {"seed", manifest.seed},
                      {"type", "run_manifest"}};
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << j.dump(2) << "\n";
}

RunManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
    RunManifest m;
    if (j.at("type") != "run_manifest")
      throw ConfigError(path + ": not a run manifest");
    m.config_hash = j.at("config_hash").get<std::string>();
    m.engine_version = j.at("engine_version").get<std::string>();
    m.inputs = j.at("inputs").get<std::vector<std::string>>();
    m.output_hashes =
        j.at("outputs").get<std::map<std::string, std::string>>();
    m.seed = j.at("seed").get<std::uint64_t>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace semmap
