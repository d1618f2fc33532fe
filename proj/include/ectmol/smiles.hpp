#pragma once

#include <string>

#include "ectmol/molecule.hpp"

namespace ectmol {

// Parses the documented SMILES subset into a heavy-atom graph (hydrogens are
// added later by add_implicit_hydrogens).  Supported: organic-subset atoms
// (B C N O P S F Cl Br I and aromatic b c n o p s), bracket atoms with
// isotope, chirality (@/@@), H count, charge and atom class, branches, ring
// closures (digits and %nn), bond symbols - = # : / \, and dot-separated
// components.  Stereo bond symbols are recorded on the bond but otherwise
// treated as single bonds.
//
// Throws Error with one of: EmptyInput, UnknownToken, UnbalancedParenthesis,
// UnmatchedRingClosure, ValenceExceeded.
MolecularGraph parse_smiles(const std::string& input);

// Atomic number for an element symbol ("C", "Cl", ...); 0 if unknown.
int element_number(const std::string& symbol);

// Symbol for an atomic number; empty if out of range.
std::string element_symbol(int atomic_number);

}  // namespace ectmol
