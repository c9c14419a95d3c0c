#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latforge/glue.hpp"
#include "latforge/niemeier.hpp"

namespace latforge {

// A finite group acting by isometries; matrices act on coordinate columns (g^T G g = G).
struct GroupAction {
  Lattice lattice;
  std::vector<IntMatrix> generators;
};

// Throws InputError naming the first generator that is not an integral isometry.
void validate(const GroupAction& a);
std::vector<IntMatrix> group_elements(const GroupAction& a, std::size_t cap = 100000);
// Multiplicative order of an isometry of finite order (throws past max).
int element_order(const IntMatrix& g, int max = 1000);

struct SubLattice {
  IntMatrix basis;  // rows, in the ambient lattice basis
  Lattice lattice;
};

SubLattice invariant_lattice(const GroupAction& a);
SubLattice coinvariant_lattice(const GroupAction& a);

// Number of fixed points chi(g) on 24 letters for element orders 1..8.
std::optional<int> chi_of_order(int order);

struct TraceRow {
  std::size_t element = 0;
  int order = 1;
  mpz_class trace;
  std::optional<int> expected;  // chi(order) - (24 - rank)
  bool ok = false;
};

struct TraceReport {
  std::vector<TraceRow> rows;
  std::optional<mpz_class> c;  // 24 - (1/|G|) sum chi; empty when some order is outside 1..8
  bool all_ok = true;
  std::string flag;
};

// Trace of each element against chi, shifted by the rank deficit to 24
// (so rank 24 compares Tr(g) = chi(g) and rank 22 compares Tr(g) = chi(g) - 2).
TraceReport trace_check(const GroupAction& a);

// Ambient even unimodular of signature (3,19) (else InputError); G nontrivial, coinvariant
// negative definite and without vectors of norm -2.
bool is_symplectic_action(const GroupAction& a);

// sigma as cycles on the 1-based simple roots; the result acts on the lattice basis.
GroupAction permutation_action_on_niemeier(const NiemeierLattice& n, const std::vector<std::vector<int>>& cycles);

// The action restricted to a G-stable primitive sublattice, in the sublattice basis.
GroupAction restrict_action(const GroupAction& a, const IntMatrix& sub_basis);
// Whether G acts trivially on A(sub), sub given by a basis in ambient coordinates.
bool induced_action_on_discriminant(const GroupAction& a, const IntMatrix& sub_basis);

// An action on l1 extended by the identity on l2 to the glued lattice.
GroupAction extend_to_glue(const GroupAction& a1, const Lattice& l2, const GlueResult& g);

struct ActionReport {
  SubLattice invariant, coinvariant;
  TraceReport traces;
  std::optional<bool> symplectic;  // empty when the ambient is not of K3 type
  std::size_t order = 0;
};
ActionReport analyze(const GroupAction& a);

// {"lattice": <path or {"gram": ...}>, "generators": [...]} or
// {"niemeier": "<root type>", "root_permutations": [[[1,2],[3,4]], ...]}
GroupAction load_action(const std::string& path);
GroupAction action_from_json_text(const std::string& text, const std::string& base_dir = ".");

}  // namespace latforge
