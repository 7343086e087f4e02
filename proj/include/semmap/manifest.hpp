#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace semmap {

std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t hash_file(const std::string& path);
std::string hash_hex(std::uint64_t h);

// Reproducibility record for one command invocation. Everything in the
// manifest is deterministic; wall-clock timing goes to a separate stats
// file so identical runs produce identical manifests.
struct RunManifest {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string engine_version;
  std::vector<std::string> inputs;
  std::map<std::string, std::string> output_hashes;  // filename -> hash
};

void save_manifest(const RunManifest& manifest, const std::string& path);
RunManifest load_manifest(const std::string& path);

}  // namespace semmap
