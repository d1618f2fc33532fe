#include "ectmol/manifest.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "ectmol/errors.hpp"
#include "ectmol/version.hpp"

namespace ectmol {

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_error(errc::io_failure, "cannot open " + path + " for digesting");
  std::uint64_t hash = 0xcbf29ce484222325ull;
  char buffer[65536];
  while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
    std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buffer[i]);
      hash *= 0x100000001b3ull;
    }
    if (got < static_cast<std::streamsize>(sizeof(buffer))) break;
  }
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx", static_cast<unsigned long long>(hash));
  return out;
}

std::string RunManifest::to_json() const {
  nlohmann::json j;
  j["tool"] = "ectmol";
  j["version"] = kVersion;
  j["command"] = command;
  j["seed"] = seed;
  j["flags"] = flags;
  j["inputs"] = input_digests;
  j["outputs"] = output_digests;
  return j.dump(2);
}

void RunManifest::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_error(errc::io_failure, "cannot write " + path);
  out << to_json() << "\n";
}

}  // namespace ectmol
