#include "ectmol/molecule.hpp"

#include <algorithm>
#include <cstdlib>

#include "ectmol/errors.hpp"

namespace ectmol {

int bond_order_halves(BondOrder order) {
  switch (order) {
    case BondOrder::single: return 2;
    case BondOrder::double_bond: return 4;
    case BondOrder::triple: return 6;
    case BondOrder::aromatic: return 3;
  }
  return 2;
}

int default_valence(int element) {
  switch (element) {
    case 5: return 3;   // B
    case 6: return 4;   // C
    case 7: return 3;   // N
    case 8: return 2;   // O
    case 15: return 3;  // P
    case 16: return 2;  // S
    case 9:
    case 17:
    case 35:
    case 53: return 1;  // F, Cl, Br, I
  }
  return -1;
}

int max_organic_valence(int element) {
  switch (element) {
    case 5: return 3;
    case 6: return 4;
    case 7: return 5;   // covers N(=O)=O
    case 8: return 2;
    case 15: return 5;
    case 16: return 6;  // covers S(=O)(=O)
    case 9:
    case 17:
    case 35:
    case 53: return 1;
  }
  return -1;
}

std::vector<std::vector<std::pair<int, int>>> adjacency(const MolecularGraph& g) {
  std::vector<std::vector<std::pair<int, int>>> adj(g.atom_count());
  for (std::size_t e = 0; e < g.bonds.size(); ++e) {
    const Bond& b = g.bonds[e];
    adj[b.u].emplace_back(b.v, static_cast<int>(e));
    adj[b.v].emplace_back(b.u, static_cast<int>(e));
  }
  return adj;
}

std::vector<int> bond_order_halves_per_atom(const MolecularGraph& g) {
  std::vector<int> totals(g.atom_count(), 0);
  for (const Bond& b : g.bonds) {
    int h = bond_order_halves(b.order);
    totals[b.u] += h;
    totals[b.v] += h;
  }
  return totals;
}

int euler_characteristic(const MolecularGraph& g) {
  return static_cast<int>(g.atom_count()) - static_cast<int>(g.bond_count());
}

namespace {

// Iterative union-find over atom indices.
struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(std::size_t n) : parent(n) {
    for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<int> component_labels(const MolecularGraph& g) {
  DisjointSet ds(g.atom_count());
  for (const Bond& b : g.bonds) ds.unite(b.u, b.v);
  std::vector<int> label(g.atom_count());
  for (std::size_t v = 0; v < g.atom_count(); ++v) label[v] = ds.find(static_cast<int>(v));
  return label;
}

}  // namespace

int connected_components(const MolecularGraph& g) {
  if (g.atom_count() == 0) return 0;
  auto label = component_labels(g);
  int count = 0;
  for (std::size_t v = 0; v < label.size(); ++v) {
    if (label[v] == static_cast<int>(v)) ++count;
  }
  return count;
}

int cycle_rank(const MolecularGraph& g) {
  return static_cast<int>(g.bond_count()) - static_cast<int>(g.atom_count()) +
         connected_components(g);
}

MolecularGraph add_implicit_hydrogens(const MolecularGraph& g) {
  MolecularGraph out = g;
  auto totals = bond_order_halves_per_atom(g);
  for (std::size_t v = 0; v < g.atoms.size(); ++v) {
    const Atom& a = g.atoms[v];
    int count = 0;
    if (a.from_bracket()) {
      count = a.explicit_h_count;
    } else {
      int valence = default_valence(a.element);
      if (valence > 0) {
        // Half-unit arithmetic floors the 1.5 contributed by aromatic bonds.
        int halves = 2 * valence - totals[v] - 2 * std::abs(a.formal_charge);
        count = std::max(0, halves / 2);
      }
    }
    for (int k = 0; k < count; ++k) {
      Atom h;
      h.element = 1;
      out.atoms.push_back(h);
      Bond b;
      b.u = static_cast<int>(v);
      b.v = static_cast<int>(out.atoms.size()) - 1;
      b.order = BondOrder::single;
      out.bonds.push_back(b);
    }
  }
  return out;
}

MolecularGraph largest_component(const MolecularGraph& g) {
  if (g.atom_count() == 0) return g;
  auto label = component_labels(g);
  std::vector<int> sizes(g.atom_count(), 0);
  for (int l : label) ++sizes[l];
  int best = label[0];
  for (std::size_t v = 0; v < g.atom_count(); ++v) {
    if (sizes[label[v]] > sizes[best]) best = label[v];
  }
  std::vector<int> remap(g.atom_count(), -1);
  MolecularGraph out;
  out.source_smiles = g.source_smiles;
  for (std::size_t v = 0; v < g.atom_count(); ++v) {
    if (label[v] == best) {
      remap[v] = static_cast<int>(out.atoms.size());
      out.atoms.push_back(g.atoms[v]);
    }
  }
  for (const Bond& b : g.bonds) {
    if (remap[b.u] >= 0 && remap[b.v] >= 0) {
      Bond nb = b;
      nb.u = remap[b.u];
      nb.v = remap[b.v];
      out.bonds.push_back(nb);
    }
  }
  return out;
}

std::vector<std::pair<int, int>> edge_list(const MolecularGraph& g) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(g.bonds.size());
  for (const Bond& b : g.bonds) edges.emplace_back(b.u, b.v);
  return edges;
}

}  // namespace ectmol
