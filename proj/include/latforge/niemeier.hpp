#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latforge/definite.hpp"

namespace latforge {

struct NiemeierEntry {
  int index = 0;
  std::string root_label;  // as printed
  RootType root_type;
  mpz_class o1, total;
  std::string o2;  // group name: 1, Sn, An, M12, M24, GL(n,q), F2^k, joined by 'x' or ':'
  std::string ref, provenance;
  std::optional<std::string> glue_file;
};

// Order of a group given by name as above.
mpz_class group_order(const std::string& name);

std::vector<NiemeierEntry> catalog(const std::string& dir = {});
const NiemeierEntry& catalog_entry(const std::vector<NiemeierEntry>& cat, const std::string& root_type);

struct NiemeierLattice {
  NiemeierEntry entry;
  std::vector<RootComponent> components;  // in root-basis order
  Lattice root_lattice;                   // negative definite, Gramian -Cartan
  RatMatrix basis;                        // rows, in root-basis coordinates
  Lattice lattice;
  mpz_class glue_order;
};

// Builds the lattice from the glue file and runs self-verification (throws MathError on failure).
NiemeierLattice construct(const NiemeierEntry& entry, const std::string& dir = {});

// Components of a root type string in the written order.
std::vector<RootComponent> components_in_order(const std::string& label);

}  // namespace latforge
