#pragma once

#include <string>
#include <vector>

#include "latforge/lattice.hpp"

namespace latforge {

// LLL reduction of a positive definite Gramian. Returns t with t g t^T reduced (rows of t are the new basis).
IntMatrix lll_reduce(const IntMatrix& gram);

struct ShortVectorList {
  mpz_class bound;
  // One of each pair +-v, in lattice coordinates, with |<v,v>| <= bound.
  std::vector<IntVector> vectors;
  std::vector<mpz_class> norms;  // signed norms <v,v>
  std::size_t count_with_norm(const mpz_class& n) const;
};

// Nonzero vectors with |<v,v>| <= bound of a definite lattice.
ShortVectorList short_vectors(const Lattice& l, const mpz_class& bound);

struct RootComponent {
  char type = 'A';  // 'A', 'D' or 'E'
  int rank = 1;
  bool operator==(const RootComponent& o) const { return type == o.type && rank == o.rank; }
  bool operator<(const RootComponent& o) const;
};

struct RootType {
  std::vector<RootComponent> components;  // sorted
  int rank() const;
  bool empty() const { return components.empty(); }
  bool operator==(const RootType& o) const { return components == o.components; }
  bool operator!=(const RootType& o) const { return !(*this == o); }
};

// Accepts forms like "A5^4+D4", "A_1^{\oplus 2}", "A1 + A2", "E8(-1)"; an empty string or "0" is the empty type.
RootType parse_root_type(const std::string& text);
std::string to_string(const RootType& t);

struct RootSystem {
  std::vector<IntVector> positive;  // positive roots
  std::vector<IntVector> simple;    // simple roots
  RootType type;
};

// Roots are the vectors of norm 2 (positive definite) or -2 (negative definite).
RootSystem root_system(const Lattice& l, int functional_seed = 0);
RootType root_sublattice_type(const Lattice& l);

struct IsometryGroup {
  std::vector<IntMatrix> generators;  // column convention: g^T G g = G
  mpz_class order = 0;
  bool certified = false;
  std::vector<IntMatrix> elements;  // full list when the order is certified
};

struct DefiniteOptions {
  std::size_t max_rank = 8;
  std::size_t max_elements = 1000000;
};

IsometryGroup isometry_group(const Lattice& l, const DefiniteOptions& opt = {});
IsometryGroup O0_subgroup(const Lattice& l, const DefiniteOptions& opt = {});

struct IsometryWitness {
  bool isometric = false;
  IntMatrix map;  // columns: images of the basis of a in coordinates of b; map^T G_b map = G_a
};
IsometryWitness are_isometric(const Lattice& a, const Lattice& b, const DefiniteOptions& opt = {});

// All elements of the group generated by gens (breadth-first); throws past cap elements.
std::vector<IntMatrix> closure(const std::vector<IntMatrix>& gens, std::size_t cap);

}  // namespace latforge
