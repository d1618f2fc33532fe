#pragma once

#include <cstdint>
#include <random>

namespace ectmol {

// Identifies the direction-sampling generator: the standard-mandated
// mt19937_64 engine feeding a Marsaglia polar transform.  The engine output
// sequence is fixed by the C++ standard, so regeneration from the same seed
// is bit-exact.
inline constexpr const char* kGeneratorId = "mt19937_64/polar-v1";

class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Standard normal via the polar method; one spare is cached, so draws
  // consume a deterministic engine sequence.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform integer in [0, n); the modulo mapping is part of the documented
  // sequence, chosen for cross-platform determinism.
  std::uint64_t bounded(std::uint64_t n) { return engine_() % n; }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ectmol
