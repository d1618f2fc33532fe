#include "ectmol/ect.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "ectmol/errors.hpp"
#include "ectmol/rng.hpp"

namespace ectmol {

DirectionSet sample_directions(std::size_t dimension, std::size_t count, std::uint64_t seed) {
  if (dimension < 1) throw_error(errc::invalid_dimension, "dimension must be >= 1");
  if (count < 1) throw_error(errc::invalid_count, "count must be >= 1");

  DirectionSet set;
  set.dimension = dimension;
  set.count = count;
  set.seed = seed;
  set.generator_id = kGeneratorId;
  set.vectors.resize(dimension * count);

  GaussianRng rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    double* v = set.vectors.data() + i * dimension;
    double norm = 0.0;
    do {
      double norm_sq = 0.0;
      for (std::size_t j = 0; j < dimension; ++j) {
        v[j] = rng.gaussian();
        norm_sq += v[j] * v[j];
      }
      norm = std::sqrt(norm_sq);
    } while (norm == 0.0);
    for (std::size_t j = 0; j < dimension; ++j) v[j] /= norm;
  }
  return set;
}

ThresholdGrid ThresholdGrid::uniform(std::size_t count) {
  if (count < 1) throw_error(errc::invalid_count, "grid needs at least one threshold");
  ThresholdGrid grid;
  grid.values.resize(count);
  if (count == 1) {
    grid.values[0] = 1.0;
    return grid;
  }
  for (std::size_t i = 0; i < count; ++i) {
    grid.values[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  grid.values.front() = -1.0;
  grid.values.back() = 1.0;  // exact endpoints; the terminal chi contract relies on it
  return grid;
}

Filtration make_filtration(const FeatureMatrix& features,
                           const std::vector<std::pair<int, int>>& edges,
                           std::span<const double> direction) {
  if (direction.size() != features.width) {
    throw_error(errc::dimension_mismatch,
                "direction dimension " + std::to_string(direction.size()) +
                    " != feature width " + std::to_string(features.width));
  }
  Filtration f;
  f.node_heights.resize(features.rows());
  for (std::size_t v = 0; v < features.rows(); ++v) {
    const double* row = features.row(v);
    double h = 0.0;
    for (std::size_t j = 0; j < features.width; ++j) h += row[j] * direction[j];
    f.node_heights[v] = h;
  }
  f.edge_heights.resize(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    f.edge_heights[e] = std::max(f.node_heights[edges[e].first], f.node_heights[edges[e].second]);
  }
  return f;
}

std::vector<std::int32_t> compute_ecc(const FeatureMatrix& features,
                                      const std::vector<std::pair<int, int>>& edges,
                                      std::span<const double> direction,
                                      const ThresholdGrid& grid) {
  Filtration f = make_filtration(features, edges, direction);
  std::sort(f.node_heights.begin(), f.node_heights.end());
  std::sort(f.edge_heights.begin(), f.edge_heights.end());

  std::vector<std::int32_t> ecc(grid.values.size());
  std::size_t nv = 0, ne = 0;
  for (std::size_t t = 0; t < grid.values.size(); ++t) {
    double threshold = grid.values[t];
    while (nv < f.node_heights.size() && f.node_heights[nv] <= threshold) ++nv;
    while (ne < f.edge_heights.size() && f.edge_heights[ne] <= threshold) ++ne;
    ecc[t] = static_cast<std::int32_t>(nv) - static_cast<std::int32_t>(ne);
  }
  return ecc;
}

ECTDescriptor compute_ect(const FeatureMatrix& features,
                          const std::vector<std::pair<int, int>>& edges,
                          const DirectionSet& dirs, const ThresholdGrid& grid) {
  ECTDescriptor out;
  out.directions = dirs.count;
  out.thresholds = grid.values.size();
  out.values.resize(out.directions * out.thresholds);
  for (std::size_t d = 0; d < dirs.count; ++d) {
    auto ecc = compute_ecc(features, edges, {dirs.row(d), dirs.dimension}, grid);
    std::copy(ecc.begin(), ecc.end(), out.values.begin() + d * out.thresholds);
  }
  return out;
}

EctTable ect_batch(const std::vector<FeatureMatrix>& features,
                   const std::vector<std::vector<std::pair<int, int>>>& edges,
                   const DirectionSet& dirs, const ThresholdGrid& grid, unsigned jobs) {
  if (features.size() != edges.size()) {
    throw_error(errc::row_count_mismatch, "feature and edge lists differ in length");
  }
  EctTable table;
  table.rows = features.size();
  table.directions = dirs.count;
  table.thresholds = grid.values.size();
  table.values.resize(table.rows * table.width());
  table.ids.resize(table.rows);

  const std::size_t n = features.size();
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;

  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        ECTDescriptor d = compute_ect(features[i], edges[i], dirs, grid);
        std::copy(d.values.begin(), d.values.end(), table.values.begin() + i * table.width());
        table.ids[i] = features[i].molecule_id;
      } catch (const Error& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) {
          first_error = std::make_exception_ptr(
              Error(e.code(), "molecule " + std::to_string(i) + ": " + e.message()));
        }
        return;
      }
    }
  };

  if (jobs <= 1 || n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    unsigned spawn = std::min<std::size_t>(jobs, n);
    pool.reserve(spawn);
    for (unsigned j = 0; j < spawn; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return table;
}

}  // namespace ectmol
