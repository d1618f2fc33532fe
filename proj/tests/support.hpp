#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "ectmol/ect.hpp"
#include "ectmol/features.hpp"
#include "ectmol/matrix.hpp"
#include "ectmol/molecule.hpp"

namespace ectmol::testing {

// A connected random molecule with topology known by construction.
struct RandomMolecule {
  std::string smiles;
  int heavy_atoms = 0;
  int heavy_bonds = 0;
  int ring_edges = 0;  // cycle rank
};

// Random tree over C/N/O plus optional ring-closing edges, emitted as SMILES
// via a DFS writer; valences are respected so parsing round-trips.
RandomMolecule random_molecule(std::mt19937_64& rng, int min_heavy = 4, int max_heavy = 14,
                               int max_rings = 3);

// Arbitrary simple graph + feature matrix for ECC oracle tests (not a
// molecule; features are uniform in [-1, 1]).
struct RandomGraph {
  FeatureMatrix features;
  std::vector<std::pair<int, int>> edges;
};

RandomGraph random_graph(std::mt19937_64& rng, int max_nodes = 20, std::size_t width = 9);

// Naive per-threshold subcomplex counting: both endpoints of an edge must be
// inside the sublevel set.  Independent of the swept implementation.
std::vector<std::int32_t> naive_ecc(const FeatureMatrix& features,
                                    const std::vector<std::pair<int, int>>& edges,
                                    const std::vector<double>& direction,
                                    const ThresholdGrid& grid);

// Independent bridge oracle: an edge lies on a cycle iff its endpoints stay
// connected after deleting it.
std::vector<bool> edges_on_cycles_by_deletion(const MolecularGraph& g);

// Dense solve of (Xc'Xc + lambda n I) w = Xc'yc by Gauss-Jordan elimination
// with partial pivoting; returns (weights, intercept).
std::pair<std::vector<double>, double> ridge_by_elimination(const Matrix& x,
                                                            const std::vector<double>& y,
                                                            double lambda);

// Relabels atoms by the permutation perm (new index of old atom i).
MolecularGraph permute_atoms(const MolecularGraph& g, const std::vector<int>& perm);

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const std::string& tag);
  ~TempDir();
  std::string file(const std::string& name) const { return (path / name).string(); }
};

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

// Runs the ectmol binary (path injected by the build) with the given
// argument string.
CliResult run_cli(const std::string& args);

std::string slurp(const std::string& path);

}  // namespace ectmol::testing
