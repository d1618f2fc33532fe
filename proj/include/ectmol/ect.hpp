#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ectmol/features.hpp"

namespace ectmol {

// D unit vectors in feature space, reproducible from (seed, generator_id,
// count, dimension).
struct DirectionSet {
  std::size_t dimension = 0;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  std::string generator_id;
  std::vector<double> vectors;  // count x dimension, row-major

  const double* row(std::size_t i) const { return vectors.data() + i * dimension; }
};

// Uniform on the unit sphere: independent standard Gaussians, normalized;
// zero vectors are rejected and redrawn.
DirectionSet sample_directions(std::size_t dimension, std::size_t count, std::uint64_t seed);

struct ThresholdGrid {
  std::vector<double> values;  // strictly increasing

  // count equally spaced points on [-1, 1] inclusive; count == 1 gives {1}.
  static ThresholdGrid uniform(std::size_t count);
};

// Sublevel-set filtration along one direction: a node enters at its
// projection, an edge at the max of its endpoints.
struct Filtration {
  std::vector<double> node_heights;
  std::vector<double> edge_heights;
};

Filtration make_filtration(const FeatureMatrix& features,
                           const std::vector<std::pair<int, int>>& edges,
                           std::span<const double> direction);

// Euler characteristic curve: chi(t) = #{v : h_v <= t} - #{e : h_e <= t} for
// each grid value, via one sort and a single sweep.
std::vector<std::int32_t> compute_ecc(const FeatureMatrix& features,
                                      const std::vector<std::pair<int, int>>& edges,
                                      std::span<const double> direction,
                                      const ThresholdGrid& grid);

// D x T integer grid, flattened direction-major: index = d * T + t.
struct ECTDescriptor {
  std::size_t directions = 0;
  std::size_t thresholds = 0;
  std::vector<std::int32_t> values;

  std::int32_t at(std::size_t d, std::size_t t) const { return values[d * thresholds + t]; }
  std::span<const std::int32_t> flattened() const { return values; }
};

ECTDescriptor compute_ect(const FeatureMatrix& features,
                          const std::vector<std::pair<int, int>>& edges,
                          const DirectionSet& dirs, const ThresholdGrid& grid);

// N x (D*T) table of int32 ECT rows; output independent of worker count.
struct EctTable {
  std::size_t rows = 0;
  std::size_t directions = 0;
  std::size_t thresholds = 0;
  std::vector<std::string> ids;       // one per row
  std::vector<std::int32_t> values;   // rows x (directions * thresholds)

  std::size_t width() const { return directions * thresholds; }
};

EctTable ect_batch(const std::vector<FeatureMatrix>& features,
                   const std::vector<std::vector<std::pair<int, int>>>& edges,
                   const DirectionSet& dirs, const ThresholdGrid& grid, unsigned jobs = 1);

}  // namespace ectmol
