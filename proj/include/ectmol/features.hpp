#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "ectmol/molecule.hpp"

namespace ectmol {

inline constexpr std::size_t kAtomFeatureWidth = 9;
inline constexpr const char* kFeatureSchemaVersion = "ectmol-atom-features-v1";

// Fixed column order; every consumer relies on it.
extern const std::array<const char*, kAtomFeatureWidth> kAtomFeatureNames;

// Row-major |V| x width matrix of per-atom features.
struct FeatureMatrix {
  std::string molecule_id;
  std::size_t width = 0;
  std::vector<double> values;

  std::size_t rows() const { return width == 0 ? 0 : values.size() / width; }
  double* row(std::size_t i) { return values.data() + i * width; }
  const double* row(std::size_t i) const { return values.data() + i * width; }
};

struct RingFlags {
  std::vector<bool> atom_in_ring;
  std::vector<bool> bond_in_ring;
};

// A bond is in a ring iff it is not a bridge (single DFS pass); an atom is in
// a ring iff some incident bond is.
RingFlags ring_membership(const MolecularGraph& g);

// One row per atom, in graph order, following kAtomFeatureNames.  Expects a
// hydrogen-expanded graph.
FeatureMatrix featurize(const MolecularGraph& g);

struct NormalizationStats {
  std::vector<double> means;
  std::vector<double> stds;  // population std; 0 marks a constant column
  double max_row_norm = 0.0;
  std::string schema_version = kFeatureSchemaVersion;

  std::string to_json() const;
  static NormalizationStats from_json(const std::string& text);
};

// Per-column z-score over all atoms of all molecules (constant columns map to
// 0), then a global division by the maximum row norm so every feature vector
// lies in the closed unit ball.  Accumulation runs in document order so the
// result is bit-identical across runs.
std::pair<std::vector<FeatureMatrix>, NormalizationStats> normalize_dataset(
    const std::vector<FeatureMatrix>& matrices);

// Applies previously computed stats to a new molecule (inference path).
FeatureMatrix apply_normalization(const FeatureMatrix& m, const NormalizationStats& stats);

}  // namespace ectmol
