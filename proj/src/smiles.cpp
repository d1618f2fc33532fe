#include "ectmol/smiles.hpp"

#include <array>
#include <cctype>
#include <cstdlib>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "ectmol/errors.hpp"

namespace ectmol {

namespace {

constexpr std::array<const char*, 119> kElementSymbols = {
    "",   "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na",
    "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",
    "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br",
    "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag",
    "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr",
    "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu",
    "Hf", "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi",
    "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am",
    "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh",
    "Hs", "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og"};

const std::unordered_map<std::string, int>& symbol_table() {
  static const std::unordered_map<std::string, int> table = [] {
    std::unordered_map<std::string, int> t;
    for (int z = 1; z < static_cast<int>(kElementSymbols.size()); ++z) {
      t.emplace(kElementSymbols[z], z);
    }
    return t;
  }();
  return table;
}

int aromatic_element(char c) {
  switch (c) {
    case 'b': return 5;
    case 'c': return 6;
    case 'n': return 7;
    case 'o': return 8;
    case 'p': return 15;
    case 's': return 16;
  }
  return 0;
}

bool is_bond_symbol(char c) {
  return c == '-' || c == '=' || c == '#' || c == ':' || c == '/' || c == '\\';
}

BondOrder order_from_symbol(char c) {
  switch (c) {
    case '=': return BondOrder::double_bond;
    case '#': return BondOrder::triple;
    case ':': return BondOrder::aromatic;
    default: return BondOrder::single;
  }
}

BondStereo stereo_from_symbol(char c) {
  if (c == '/') return BondStereo::up;
  if (c == '\\') return BondStereo::down;
  return BondStereo::none;
}

struct RingEntry {
  int atom;
  char bond_symbol;  // 0 if the opening side gave none
  std::size_t pos;
};

struct BranchFrame {
  int prev_atom;
  std::size_t atoms_at_open;
};

class Parser {
 public:
  explicit Parser(const std::string& input) : text_(input) {}

  MolecularGraph run() {
    if (text_.empty()) throw_error(errc::empty_input, "empty SMILES string");
    graph_.source_smiles = text_;
    while (pos_ < text_.size()) step();
    finish();
    return std::move(graph_);
  }

 private:
  [[noreturn]] void fail(errc code, const std::string& what, std::size_t at) {
    throw_error(code, what + " at position " + std::to_string(at));
  }

  void step() {
    const std::size_t at = pos_;
    const char c = text_[pos_];
    if (c == '[') {
      add_atom(parse_bracket_atom(), at);
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      add_atom(parse_organic_atom(), at);
    } else if (aromatic_element(c) != 0) {
      Atom a;
      a.element = aromatic_element(c);
      a.aromatic = true;
      ++pos_;
      add_atom(a, at);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      ++pos_;
      ring_closure(c - '0', at);
    } else if (c == '%') {
      ++pos_;
      if (pos_ + 1 >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
        fail(errc::unknown_token, "'%' must be followed by two digits", at);
      }
      int number = (text_[pos_] - '0') * 10 + (text_[pos_ + 1] - '0');
      pos_ += 2;
      ring_closure(number, at);
    } else if (is_bond_symbol(c)) {
      if (pending_bond_ != 0) fail(errc::unknown_token, "two consecutive bond symbols", at);
      if (prev_atom_ < 0) fail(errc::unknown_token, "bond symbol with no preceding atom", at);
      pending_bond_ = c;
      pending_bond_pos_ = at;
      ++pos_;
    } else if (c == '(') {
      if (prev_atom_ < 0) fail(errc::unbalanced_parenthesis, "branch with no preceding atom", at);
      if (pending_bond_ != 0) fail(errc::unknown_token, "bond symbol before '('", at);
      branches_.push_back({prev_atom_, graph_.atoms.size()});
      ++pos_;
    } else if (c == ')') {
      if (branches_.empty()) fail(errc::unbalanced_parenthesis, "')' without matching '('", at);
      if (pending_bond_ != 0) fail(errc::unknown_token, "dangling bond symbol before ')'", at);
      if (graph_.atoms.size() == branches_.back().atoms_at_open) {
        fail(errc::unbalanced_parenthesis, "empty branch", at);
      }
      prev_atom_ = branches_.back().prev_atom;
      branches_.pop_back();
      ++pos_;
    } else if (c == '.') {
      if (pending_bond_ != 0) fail(errc::unknown_token, "bond symbol before '.'", at);
      if (!branches_.empty()) fail(errc::unknown_token, "'.' inside a branch", at);
      prev_atom_ = -1;
      ++pos_;
    } else {
      fail(errc::unknown_token, std::string("unexpected character '") + c + "'", at);
    }
  }

  Atom parse_organic_atom() {
    const std::size_t at = pos_;
    Atom a;
    char c = text_[pos_];
    if (c == 'C' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'l') {
      a.element = 17;
      pos_ += 2;
    } else if (c == 'B' && pos_ + 1 < text_.size() && text_[pos_ + 1] == 'r') {
      a.element = 35;
      pos_ += 2;
    } else {
      switch (c) {
        case 'B': a.element = 5; break;
        case 'C': a.element = 6; break;
        case 'N': a.element = 7; break;
        case 'O': a.element = 8; break;
        case 'P': a.element = 15; break;
        case 'S': a.element = 16; break;
        case 'F': a.element = 9; break;
        case 'I': a.element = 53; break;
        default:
          fail(errc::unknown_token,
               std::string("'") + c + "' is not an organic-subset atom", at);
      }
      ++pos_;
    }
    return a;
  }

  int parse_number(int max_digits) {
    int value = 0;
    int digits = 0;
    while (pos_ < text_.size() && digits < max_digits &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      ++pos_;
      ++digits;
    }
    return digits > 0 ? value : -1;
  }

  Atom parse_bracket_atom() {
    const std::size_t open = pos_;
    ++pos_;  // '['
    Atom a;
    a.explicit_h_count = 0;  // bracket atoms carry their hydrogens explicitly

    int isotope = parse_number(3);
    if (isotope >= 0) a.isotope = isotope;

    if (pos_ >= text_.size()) fail(errc::unknown_token, "unterminated bracket atom", open);
    char c = text_[pos_];
    if (std::isupper(static_cast<unsigned char>(c))) {
      std::string symbol(1, c);
      if (pos_ + 1 < text_.size() && std::islower(static_cast<unsigned char>(text_[pos_ + 1]))) {
        std::string two = symbol + text_[pos_ + 1];
        if (symbol_table().count(two)) symbol = two;
      }
      auto it = symbol_table().find(symbol);
      if (it == symbol_table().end()) {
        fail(errc::unknown_token, "unknown element symbol '" + symbol + "'", pos_);
      }
      a.element = it->second;
      pos_ += symbol.size();
    } else if (aromatic_element(c) != 0) {
      a.element = aromatic_element(c);
      a.aromatic = true;
      ++pos_;
    } else {
      fail(errc::unknown_token, "expected element symbol in bracket atom", pos_);
    }

    if (pos_ < text_.size() && text_[pos_] == '@') {
      ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '@') {
        a.chirality = Chirality::clockwise;
        ++pos_;
      } else {
        a.chirality = Chirality::anticlockwise;
      }
    }

    if (pos_ < text_.size() && text_[pos_] == 'H') {
      ++pos_;
      int count = parse_number(2);
      a.explicit_h_count = count >= 0 ? count : 1;
    }

    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      char sign = text_[pos_];
      ++pos_;
      int magnitude = parse_number(2);
      if (magnitude < 0) {
        magnitude = 1;
        while (pos_ < text_.size() && text_[pos_] == sign) {  // ++ / -- style
          ++magnitude;
          ++pos_;
        }
      }
      a.formal_charge = sign == '+' ? magnitude : -magnitude;
    }

    if (pos_ < text_.size() && text_[pos_] == ':') {
      ++pos_;
      if (parse_number(5) < 0) fail(errc::unknown_token, "':' needs an atom class number", pos_);
      // atom class parsed and ignored
    }

    if (pos_ >= text_.size() || text_[pos_] != ']') {
      fail(errc::unknown_token, "unterminated bracket atom", open);
    }
    ++pos_;
    return a;
  }

  void add_atom(const Atom& a, std::size_t at) {
    graph_.atoms.push_back(a);
    int index = static_cast<int>(graph_.atoms.size()) - 1;
    if (prev_atom_ >= 0) {
      make_bond(prev_atom_, index, pending_bond_, at);
    } else if (pending_bond_ != 0) {
      fail(errc::unknown_token, "bond symbol with no preceding atom", pending_bond_pos_);
    }
    pending_bond_ = 0;
    prev_atom_ = index;
  }

  void make_bond(int u, int v, char symbol, std::size_t at) {
    if (u == v) fail(errc::unmatched_ring_closure, "ring closure bonds an atom to itself", at);
    for (const Bond& b : graph_.bonds) {
      if ((b.u == u && b.v == v) || (b.u == v && b.v == u)) {
        fail(errc::unmatched_ring_closure, "duplicate bond between the same atoms", at);
      }
    }
    Bond b;
    b.u = u;
    b.v = v;
    if (symbol != 0) {
      b.order = order_from_symbol(symbol);
      b.stereo = stereo_from_symbol(symbol);
    } else {
      bool both_aromatic = graph_.atoms[u].aromatic && graph_.atoms[v].aromatic;
      b.order = both_aromatic ? BondOrder::aromatic : BondOrder::single;
    }
    graph_.bonds.push_back(b);
  }

  void ring_closure(int number, std::size_t at) {
    if (prev_atom_ < 0) {
      fail(errc::unmatched_ring_closure, "ring closure with no preceding atom", at);
    }
    auto it = open_rings_.find(number);
    if (it == open_rings_.end()) {
      open_rings_.emplace(number, RingEntry{prev_atom_, pending_bond_, at});
      pending_bond_ = 0;
      return;
    }
    RingEntry entry = it->second;
    open_rings_.erase(it);
    char symbol = entry.bond_symbol;
    if (pending_bond_ != 0) {
      if (symbol != 0 && symbol != pending_bond_) {
        fail(errc::unmatched_ring_closure, "conflicting bond symbols on ring closure", at);
      }
      symbol = pending_bond_;
    }
    pending_bond_ = 0;
    make_bond(entry.atom, prev_atom_, symbol, at);
  }

  void check_valences() const {
    // The limit counts the sigma framework: aromatic bonds count 1, so furan
    // oxygens (two ring bonds) and fused-ring junction carbons (three) pass.
    // Hydrogen filling still uses the 1.5 convention separately.
    std::vector<int> sigma(graph_.atoms.size(), 0);
    for (const Bond& b : graph_.bonds) {
      int order = 1;
      if (b.order == BondOrder::double_bond) order = 2;
      if (b.order == BondOrder::triple) order = 3;
      sigma[b.u] += order;
      sigma[b.v] += order;
    }
    for (std::size_t v = 0; v < graph_.atoms.size(); ++v) {
      const Atom& a = graph_.atoms[v];
      if (a.from_bracket()) continue;  // any element, any valence inside brackets
      int max = max_organic_valence(a.element);
      if (max < 0) continue;
      if (sigma[v] > max) {
        throw_error(errc::valence_exceeded,
                    "atom " + std::to_string(v) + " (" + element_symbol(a.element) + ") has " +
                        std::to_string(sigma[v]) + " explicit bonds, maximum is " +
                        std::to_string(max));
      }
    }
  }

  void finish() {
    if (pending_bond_ != 0) {
      fail(errc::unknown_token, "dangling bond symbol", pending_bond_pos_);
    }
    if (!branches_.empty()) {
      fail(errc::unbalanced_parenthesis, "unclosed '('", text_.size());
    }
    if (!open_rings_.empty()) {
      auto first = open_rings_.begin();
      fail(errc::unmatched_ring_closure,
           "ring closure " + std::to_string(first->first) + " never closed", first->second.pos);
    }
    if (graph_.atoms.empty()) throw_error(errc::empty_input, "no atoms in input");
    check_valences();
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  MolecularGraph graph_;
  std::vector<BranchFrame> branches_;
  std::map<int, RingEntry> open_rings_;
  int prev_atom_ = -1;
  char pending_bond_ = 0;
  std::size_t pending_bond_pos_ = 0;
};

}  // namespace

MolecularGraph parse_smiles(const std::string& input) { return Parser(input).run(); }

int element_number(const std::string& symbol) {
  auto it = symbol_table().find(symbol);
  return it == symbol_table().end() ? 0 : it->second;
}

std::string element_symbol(int atomic_number) {
  if (atomic_number < 1 || atomic_number >= static_cast<int>(kElementSymbols.size())) return "";
  return kElementSymbols[atomic_number];
}

}  // namespace ectmol
