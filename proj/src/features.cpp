#include "ectmol/features.hpp"

#include <cmath>
#include <cstdlib>
#include <utility>

#include <json.hpp>

#include "ectmol/errors.hpp"

namespace ectmol {

const std::array<const char*, kAtomFeatureWidth> kAtomFeatureNames = {
    "atomic_number",   "chirality_code",        "total_degree",
    "formal_charge",   "num_hydrogen_neighbors", "num_radical_electrons",
    "hybridization_code", "is_aromatic",        "is_in_ring"};

RingFlags ring_membership(const MolecularGraph& g) {
  const std::size_t n = g.atom_count();
  const std::size_t m = g.bond_count();
  RingFlags flags;
  flags.atom_in_ring.assign(n, false);
  flags.bond_in_ring.assign(m, true);
  if (n == 0) return flags;

  auto adj = adjacency(g);
  std::vector<int> tin(n, -1), low(n, 0);
  std::vector<bool> is_bridge(m, false);
  int timer = 0;

  // Iterative Tarjan bridge search; parent edges are skipped by bond index.
  struct Frame {
    int v;
    int parent_edge;
    std::size_t next;
  };
  std::vector<Frame> stack;
  for (std::size_t root = 0; root < n; ++root) {
    if (tin[root] >= 0) continue;
    stack.push_back({static_cast<int>(root), -1, 0});
    tin[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.next < adj[f.v].size()) {
        auto [to, edge] = adj[f.v][f.next++];
        if (edge == f.parent_edge) continue;
        if (tin[to] >= 0) {
          low[f.v] = std::min(low[f.v], tin[to]);
        } else {
          tin[to] = low[to] = timer++;
          stack.push_back({to, edge, 0});
        }
      } else {
        Frame done = f;
        stack.pop_back();
        if (!stack.empty()) {
          Frame& parent = stack.back();
          low[parent.v] = std::min(low[parent.v], low[done.v]);
          if (low[done.v] > tin[parent.v]) is_bridge[done.parent_edge] = true;
        }
      }
    }
  }

  for (std::size_t e = 0; e < m; ++e) {
    flags.bond_in_ring[e] = !is_bridge[e];
    if (flags.bond_in_ring[e]) {
      flags.atom_in_ring[g.bonds[e].u] = true;
      flags.atom_in_ring[g.bonds[e].v] = true;
    }
  }
  return flags;
}

namespace {

int hybridization_code(const MolecularGraph& g, const std::vector<std::vector<std::pair<int, int>>>& adj,
                       int v) {
  int element = g.atoms[v].element;
  if (element != 6 && element != 7 && element != 8 && element != 15 && element != 16) return 0;
  int doubles = 0, triples = 0, aromatics = 0;
  for (auto [to, edge] : adj[v]) {
    (void)to;
    switch (g.bonds[edge].order) {
      case BondOrder::double_bond: ++doubles; break;
      case BondOrder::triple: ++triples; break;
      case BondOrder::aromatic: ++aromatics; break;
      default: break;
    }
  }
  if (triples >= 1 || doubles >= 2) return 1;
  if (doubles == 1 || aromatics > 0 || g.atoms[v].aromatic) return 2;
  return 3;
}

int radical_electrons(const MolecularGraph& g, const std::vector<int>& order_halves, int v) {
  const Atom& a = g.atoms[v];
  if (!a.from_bracket()) return 0;
  int valence = default_valence(a.element);
  if (valence <= 0) return 0;
  int halves = 2 * valence - order_halves[v] - 2 * std::abs(a.formal_charge);
  return std::max(0, halves / 2);
}

}  // namespace

FeatureMatrix featurize(const MolecularGraph& g) {
  FeatureMatrix out;
  out.width = kAtomFeatureWidth;
  out.values.resize(g.atom_count() * kAtomFeatureWidth, 0.0);

  auto adj = adjacency(g);
  auto ring = ring_membership(g);
  auto order_halves = bond_order_halves_per_atom(g);

  for (std::size_t v = 0; v < g.atom_count(); ++v) {
    const Atom& a = g.atoms[v];
    int h_neighbors = 0;
    for (auto [to, edge] : adj[v]) {
      (void)edge;
      if (is_hydrogen(g.atoms[to])) ++h_neighbors;
    }
    double* row = out.row(v);
    row[0] = a.element;
    row[1] = static_cast<int>(a.chirality);
    row[2] = static_cast<double>(adj[v].size());
    row[3] = a.formal_charge;
    row[4] = h_neighbors;
    row[5] = radical_electrons(g, order_halves, static_cast<int>(v));
    row[6] = hybridization_code(g, adj, static_cast<int>(v));
    row[7] = a.aromatic ? 1.0 : 0.0;
    row[8] = ring.atom_in_ring[v] ? 1.0 : 0.0;
  }
  return out;
}

std::pair<std::vector<FeatureMatrix>, NormalizationStats> normalize_dataset(
    const std::vector<FeatureMatrix>& matrices) {
  std::size_t total_rows = 0;
  std::size_t width = 0;
  for (const FeatureMatrix& m : matrices) {
    if (width == 0) width = m.width;
    if (m.width != width) {
      throw_error(errc::dimension_mismatch, "feature matrices have differing widths");
    }
    total_rows += m.rows();
  }
  if (matrices.empty() || total_rows == 0 || width == 0) {
    throw_error(errc::empty_dataset, "no atoms to normalize");
  }

  NormalizationStats stats;
  stats.means.assign(width, 0.0);
  stats.stds.assign(width, 0.0);

  for (const FeatureMatrix& m : matrices) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      const double* row = m.row(r);
      for (std::size_t c = 0; c < width; ++c) stats.means[c] += row[c];
    }
  }
  for (std::size_t c = 0; c < width; ++c) stats.means[c] /= static_cast<double>(total_rows);

  for (const FeatureMatrix& m : matrices) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      const double* row = m.row(r);
      for (std::size_t c = 0; c < width; ++c) {
        double d = row[c] - stats.means[c];
        stats.stds[c] += d * d;
      }
    }
  }
  for (std::size_t c = 0; c < width; ++c) {
    stats.stds[c] = std::sqrt(stats.stds[c] / static_cast<double>(total_rows));
  }

  std::vector<FeatureMatrix> out = matrices;
  double max_norm = 0.0;
  for (FeatureMatrix& m : out) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      double* row = m.row(r);
      double norm_sq = 0.0;
      for (std::size_t c = 0; c < width; ++c) {
        row[c] = stats.stds[c] > 0.0 ? (row[c] - stats.means[c]) / stats.stds[c] : 0.0;
        norm_sq += row[c] * row[c];
      }
      max_norm = std::max(max_norm, std::sqrt(norm_sq));
    }
  }
  stats.max_row_norm = max_norm;
  if (max_norm > 0.0) {
    for (FeatureMatrix& m : out) {
      for (double& x : m.values) x /= max_norm;
    }
  }
  return {std::move(out), std::move(stats)};
}

FeatureMatrix apply_normalization(const FeatureMatrix& m, const NormalizationStats& stats) {
  if (m.width != stats.means.size()) {
    throw_error(errc::dimension_mismatch, "stats width does not match feature width");
  }
  FeatureMatrix out = m;
  for (std::size_t r = 0; r < out.rows(); ++r) {
    double* row = out.row(r);
    for (std::size_t c = 0; c < out.width; ++c) {
      row[c] = stats.stds[c] > 0.0 ? (row[c] - stats.means[c]) / stats.stds[c] : 0.0;
      if (stats.max_row_norm > 0.0) row[c] /= stats.max_row_norm;
    }
  }
  return out;
}

std::string NormalizationStats::to_json() const {
  nlohmann::json j;
  j["schema_version"] = schema_version;
  j["feature_names"] = kAtomFeatureNames;
  j["means"] = means;
  j["stds"] = stds;
  j["max_row_norm"] = max_row_norm;
  return j.dump(2);
}

NormalizationStats NormalizationStats::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw_error(errc::malformed_file, "invalid normalization stats JSON");
  NormalizationStats stats;
  try {
    stats.schema_version = j.at("schema_version").get<std::string>();
    stats.means = j.at("means").get<std::vector<double>>();
    stats.stds = j.at("stds").get<std::vector<double>>();
    stats.max_row_norm = j.at("max_row_norm").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw_error(errc::malformed_file, std::string("normalization stats: ") + e.what());
  }
  return stats;
}

}  // namespace ectmol
