#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ectmol {

enum class BondOrder : std::uint8_t { single, double_bond, triple, aromatic };
enum class BondStereo : std::uint8_t { none, up, down };
enum class Chirality : std::uint8_t { none, anticlockwise, clockwise };

struct Atom {
  int element = 0;         // atomic number
  int formal_charge = 0;   // elementary charges
  int explicit_h_count = -1;  // >= 0 only for bracket atoms; -1 = unset
  int isotope = 0;         // 0 = unspecified
  bool aromatic = false;
  Chirality chirality = Chirality::none;

  bool from_bracket() const { return explicit_h_count >= 0; }
};

struct Bond {
  int u = 0;
  int v = 0;
  BondOrder order = BondOrder::single;
  BondStereo stereo = BondStereo::none;
};

// Simple undirected graph: no self-loops, no duplicate edges.
struct MolecularGraph {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;
  std::string source_smiles;

  std::size_t atom_count() const { return atoms.size(); }
  std::size_t bond_count() const { return bonds.size(); }
};

inline bool is_hydrogen(const Atom& a) { return a.element == 1; }

// Bond order in half-units: single 2, double 4, triple 6, aromatic 3.
int bond_order_halves(BondOrder order);

// Default valence used for implicit hydrogen filling: B 3, C 4, N 3, O 2,
// P 3, S 2, F/Cl/Br/I 1.  Returns -1 for elements without a documented value.
int default_valence(int element);

// Maximum valence accepted by the parser for organic-subset tokens:
// B 3, C 4, N 5, O 2, P 5, S 6, halogens 1.  Returns -1 when unchecked.
int max_organic_valence(int element);

// Neighbor lists: adjacency[v] = list of (neighbor, bond index).
std::vector<std::vector<std::pair<int, int>>> adjacency(const MolecularGraph& g);

// Per-atom sum of incident bond orders in half-units.
std::vector<int> bond_order_halves_per_atom(const MolecularGraph& g);

// chi = |V| - |E|; equal to components - cycle rank.
int euler_characteristic(const MolecularGraph& g);
int connected_components(const MolecularGraph& g);
int cycle_rank(const MolecularGraph& g);

// Appends one degree-1 hydrogen vertex per implicit hydrogen.  Original atoms
// keep their indices; hydrogens are appended in parent order.
MolecularGraph add_implicit_hydrogens(const MolecularGraph& g);

// Keeps only the component with the most atoms (ties: lowest atom index).
MolecularGraph largest_component(const MolecularGraph& g);

std::vector<std::pair<int, int>> edge_list(const MolecularGraph& g);

}  // namespace ectmol
