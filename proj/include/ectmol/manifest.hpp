#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace ectmol {

// FNV-1a 64-bit over the file bytes, as a 16-digit hex string.
std::string file_digest(const std::string& path);

// Reproducibility envelope: tool version, flags, seeds and file digests.
// No timestamps, so identical runs write identical manifests apart from the
// digest values themselves.
struct RunManifest {
  std::string command;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> flags;
  std::map<std::string, std::string> input_digests;
  std::map<std::string, std::string> output_digests;

  std::string to_json() const;
  void write(const std::string& path) const;
};

}  // namespace ectmol
