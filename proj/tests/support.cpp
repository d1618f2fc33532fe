#include "support.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <tuple>

#ifndef ECTMOL_CLI_PATH
#define ECTMOL_CLI_PATH "ectmol"
#endif

namespace ectmol::testing {

namespace {

struct Builder {
  std::vector<int> element;    // atomic numbers
  std::vector<int> capacity;   // remaining valence slots
  std::vector<std::vector<std::pair<int, int>>> adj;  // neighbor, order (1/2)
  std::vector<std::tuple<int, int, int>> tree_edges;  // u, v, order
  std::vector<std::tuple<int, int, int>> ring_edges;

  bool adjacent(int u, int v) const {
    for (auto [to, order] : adj[u]) {
      (void)order;
      if (to == v) return true;
    }
    return false;
  }
};

const char* atom_token(int element) {
  switch (element) {
    case 7: return "N";
    case 8: return "O";
    default: return "C";
  }
}

void write_smiles_dfs(const Builder& b, int v, int parent, int parent_order,
                      const std::vector<std::vector<std::pair<int, int>>>& ring_marks,
                      std::string& out) {
  if (parent_order == 2) out += "=";
  out += atom_token(b.element[v]);
  for (auto [number, order] : ring_marks[v]) {
    if (order == 2) out += "=";
    if (number > 9) {
      char buf[8];
      std::snprintf(buf, sizeof(buf), "%%%02d", number % 100);
      out += buf;
    } else {
      out += static_cast<char>('0' + number);
    }
  }
  std::vector<std::pair<int, int>> children;
  for (auto [to, order] : b.adj[v]) {
    if (to != parent) children.emplace_back(to, order);
  }
  for (std::size_t i = 0; i < children.size(); ++i) {
    bool last = i + 1 == children.size();
    if (!last) out += "(";
    write_smiles_dfs(b, children[i].first, v, children[i].second, ring_marks, out);
    if (!last) out += ")";
  }
}

}  // namespace

RandomMolecule random_molecule(std::mt19937_64& rng, int min_heavy, int max_heavy,
                               int max_rings) {
  auto pick = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };

  Builder b;
  int n = pick(min_heavy, max_heavy);
  for (int v = 0; v < n; ++v) {
    int roll = pick(0, 9);
    int element = roll < 7 ? 6 : (roll < 9 ? 7 : 8);  // mostly carbon
    b.element.push_back(element);
    b.capacity.push_back(element == 6 ? 4 : element == 7 ? 3 : 2);
  }
  b.adj.resize(n);

  for (int v = 1; v < n; ++v) {
    std::vector<int> candidates;
    for (int u = 0; u < v; ++u) {
      if (b.capacity[u] >= 1) candidates.push_back(u);
    }
    if (candidates.empty()) {
      // restart with fresh sizes; extremely rare with carbon-heavy pools
      return random_molecule(rng, min_heavy, max_heavy, max_rings);
    }
    int u = candidates[pick(0, static_cast<int>(candidates.size()) - 1)];
    int order = 1;
    if (b.capacity[u] >= 2 && b.capacity[v] >= 2 && pick(0, 4) == 0) order = 2;
    b.adj[u].emplace_back(v, order);
    b.adj[v].emplace_back(u, order);
    b.capacity[u] -= order;
    b.capacity[v] -= order;
    b.tree_edges.emplace_back(u, v, order);
  }

  int ring_attempts = max_rings > 0 ? pick(0, max_rings) : 0;
  for (int k = 0; k < ring_attempts; ++k) {
    int u = pick(0, n - 1), v = pick(0, n - 1);
    if (u == v || b.adjacent(u, v) || b.capacity[u] < 1 || b.capacity[v] < 1) continue;
    b.adj[u].emplace_back(v, 1);
    b.adj[v].emplace_back(u, 1);
    b.capacity[u] -= 1;
    b.capacity[v] -= 1;
    b.ring_edges.emplace_back(u, v, 1);
  }

  // Ring-closure digits attach to both endpoints; the DFS writer skips
  // non-tree edges, so mark them out-of-band.
  std::vector<std::vector<std::pair<int, int>>> ring_marks(n);
  int next_number = 1;
  std::vector<std::vector<std::pair<int, int>>> tree_adj(n);
  for (auto [u, v, order] : b.tree_edges) {
    tree_adj[u].emplace_back(v, order);
    tree_adj[v].emplace_back(u, order);
  }
  for (auto [u, v, order] : b.ring_edges) {
    ring_marks[u].emplace_back(next_number, order);
    ring_marks[v].emplace_back(next_number, order);
    ++next_number;
  }

  Builder writer = b;
  writer.adj = tree_adj;
  std::string smiles;
  write_smiles_dfs(writer, 0, -1, 1, ring_marks, smiles);

  RandomMolecule mol;
  mol.smiles = smiles;
  mol.heavy_atoms = n;
  mol.heavy_bonds = static_cast<int>(b.tree_edges.size() + b.ring_edges.size());
  mol.ring_edges = static_cast<int>(b.ring_edges.size());
  return mol;
}

RandomGraph random_graph(std::mt19937_64& rng, int max_nodes, std::size_t width) {
  auto pick = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  auto real = [&] {
    return 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
  };

  RandomGraph g;
  int n = pick(1, max_nodes);
  g.features.width = width;
  g.features.values.resize(static_cast<std::size_t>(n) * width);
  for (double& v : g.features.values) v = real();

  // random simple graph, edge probability ~ 2/n
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (pick(0, n - 1) < 2) g.edges.emplace_back(u, v);
    }
  }
  return g;
}

std::vector<std::int32_t> naive_ecc(const FeatureMatrix& features,
                                    const std::vector<std::pair<int, int>>& edges,
                                    const std::vector<double>& direction,
                                    const ThresholdGrid& grid) {
  std::vector<double> heights(features.rows());
  for (std::size_t v = 0; v < features.rows(); ++v) {
    const double* row = features.row(v);
    double h = 0.0;
    for (std::size_t j = 0; j < features.width; ++j) h += row[j] * direction[j];
    heights[v] = h;
  }
  std::vector<std::int32_t> ecc;
  ecc.reserve(grid.values.size());
  for (double t : grid.values) {
    std::int32_t nodes = 0, included_edges = 0;
    for (double h : heights) {
      if (h <= t) ++nodes;
    }
    for (auto [u, v] : edges) {
      if (heights[u] <= t && heights[v] <= t) ++included_edges;
    }
    ecc.push_back(nodes - included_edges);
  }
  return ecc;
}

std::vector<bool> edges_on_cycles_by_deletion(const MolecularGraph& g) {
  std::vector<bool> on_cycle(g.bond_count(), false);
  for (std::size_t skip = 0; skip < g.bond_count(); ++skip) {
    int source = g.bonds[skip].u, goal = g.bonds[skip].v;
    std::vector<bool> seen(g.atom_count(), false);
    std::queue<int> frontier;
    frontier.push(source);
    seen[source] = true;
    while (!frontier.empty()) {
      int v = frontier.front();
      frontier.pop();
      for (std::size_t e = 0; e < g.bond_count(); ++e) {
        if (e == skip) continue;
        int to = -1;
        if (g.bonds[e].u == v) to = g.bonds[e].v;
        if (g.bonds[e].v == v) to = g.bonds[e].u;
        if (to >= 0 && !seen[to]) {
          seen[to] = true;
          frontier.push(to);
        }
      }
    }
    on_cycle[skip] = seen[goal];
  }
  return on_cycle;
}

std::pair<std::vector<double>, double> ridge_by_elimination(const Matrix& x,
                                                            const std::vector<double>& y,
                                                            double lambda) {
  const std::size_t n = x.rows, w = x.cols;
  std::vector<double> mean(w, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < w; ++j) mean[j] += x.at(i, j);
  }
  for (double& m : mean) m /= static_cast<double>(n);
  double y_mean = 0.0;
  for (double v : y) y_mean += v;
  y_mean /= static_cast<double>(n);

  std::vector<double> a(w * (w + 1), 0.0);  // augmented [A | b]
  for (std::size_t j = 0; j < w; ++j) {
    for (std::size_t k = 0; k < w; ++k) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        s += (x.at(i, j) - mean[j]) * (x.at(i, k) - mean[k]);
      }
      if (j == k) s += lambda * static_cast<double>(n);
      a[j * (w + 1) + k] = s;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += (x.at(i, j) - mean[j]) * (y[i] - y_mean);
    a[j * (w + 1) + w] = s;
  }

  for (std::size_t col = 0; col < w; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < w; ++r) {
      if (std::abs(a[r * (w + 1) + col]) > std::abs(a[pivot * (w + 1) + col])) pivot = r;
    }
    if (std::abs(a[pivot * (w + 1) + col]) < 1e-300) {
      throw std::runtime_error("oracle: singular system");
    }
    if (pivot != col) {
      for (std::size_t c = 0; c <= w; ++c) std::swap(a[pivot * (w + 1) + c], a[col * (w + 1) + c]);
    }
    double d = a[col * (w + 1) + col];
    for (std::size_t c = 0; c <= w; ++c) a[col * (w + 1) + c] /= d;
    for (std::size_t r = 0; r < w; ++r) {
      if (r == col) continue;
      double f = a[r * (w + 1) + col];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= w; ++c) a[r * (w + 1) + c] -= f * a[col * (w + 1) + c];
    }
  }

  std::vector<double> weights(w);
  for (std::size_t j = 0; j < w; ++j) weights[j] = a[j * (w + 1) + w];
  double intercept = y_mean;
  for (std::size_t j = 0; j < w; ++j) intercept -= mean[j] * weights[j];
  return {weights, intercept};
}

MolecularGraph permute_atoms(const MolecularGraph& g, const std::vector<int>& perm) {
  MolecularGraph out;
  out.source_smiles = g.source_smiles;
  out.atoms.resize(g.atom_count());
  for (std::size_t v = 0; v < g.atom_count(); ++v) out.atoms[perm[v]] = g.atoms[v];
  out.bonds = g.bonds;
  for (Bond& b : out.bonds) {
    b.u = perm[b.u];
    b.v = perm[b.v];
  }
  return out;
}

TempDir::TempDir(const std::string& tag) {
  static int counter = 0;
  path = std::filesystem::temp_directory_path() /
         ("ectmol_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  std::filesystem::create_directories(path);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path, ec);
}

CliResult run_cli(const std::string& args) {
  std::string command = std::string(ECTMOL_CLI_PATH) + " " + args + " 2>&1";
  CliResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return result;
  char buffer[4096];
  while (std::size_t got = fread(buffer, 1, sizeof(buffer), pipe)) {
    result.output.append(buffer, got);
    if (got < sizeof(buffer)) break;
  }
  int status = pclose(pipe);
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace ectmol::testing
