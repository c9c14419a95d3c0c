#pragma once

#include <string>
#include <vector>

#include "latforge/discform.hpp"

namespace latforge {

// Isometries act on column coordinate vectors: x -> m x, with m^T G m = G.
using Isometry = RatMatrix;

// Image of a nonzero rational in Q_p^x / (Q_p^x)^2, kept as a canonical integer representative:
// p = 2: one of 1, -1, 3, -3, 2, -2, 6, -6; odd p: 1, e, p, e*p with e the least non-residue.
struct LocalSquareClass {
  mpz_class p;
  mpz_class rep;
  bool operator==(const LocalSquareClass& o) const { return p == o.p && rep == o.rep; }
  bool operator<(const LocalSquareClass& o) const { return p < o.p || (p == o.p && rep < o.rep); }
};

LocalSquareClass localize(const mpq_class& a, const mpz_class& p);
LocalSquareClass operator*(const LocalSquareClass& a, const LocalSquareClass& b);
std::vector<LocalSquareClass> local_square_classes(const mpz_class& p);

struct DetSpinorPair {
  int det = 1;
  mpz_class spinor = 1;  // squarefree representative
  bool operator==(const DetSpinorPair& o) const { return det == o.det && spinor == o.spinor; }
};

struct LocalPair {
  int det = 1;
  LocalSquareClass spinor;
  bool operator==(const LocalPair& o) const { return det == o.det && spinor == o.spinor; }
  bool operator<(const LocalPair& o) const {
    return det < o.det || (det == o.det && spinor < o.spinor);
  }
};
LocalPair localize(const DetSpinorPair& f, const mpz_class& p);
LocalPair operator*(const LocalPair& a, const LocalPair& b);

std::string to_string(const LocalSquareClass& c);
std::string to_string(const DetSpinorPair& f);
std::string to_string(const LocalPair& f);

// T(v) w = w - 2<v,w>/<v,v> v.
Isometry reflection(const Lattice& l, const RatVector& v);
bool is_integral_isometry(const Lattice& l, const Isometry& m);

// Vectors v_1..v_r with phi = T(v_1) ... T(v_r), r <= 2 rank.
std::vector<RatVector> reflection_factorization(const Lattice& l, const Isometry& phi);

mpz_class spinor_norm(const Lattice& l, const Isometry& phi);
DetSpinorPair f_value(const Lattice& l, const Isometry& phi);

// Denominators of m and m^-1 prime to p.
bool is_p_integral(const Isometry& m, const mpz_class& p);

// phi fixes the p-part of the discriminant group modulo L (x) Z_p. Throws if phi is not p-integral.
bool in_O0_local(const Lattice& l, const Isometry& phi, const mpz_class& p);

struct TwoAdicInvariants {
  int r = 0;
  int d = 1;
  int t = 0;
  bool type_II = true;
  bool operator==(const TwoAdicInvariants& o) const {
    return r == o.r && d == o.d && t == o.t && type_II == o.type_II;
  }
};
// Invariants of a lattice that is unimodular at 2 (odd determinant).
TwoAdicInvariants two_adic_unimodular_invariants(const Lattice& l);

// J_2 = <(1, Z_2^x/squares), (-1, 2)>, and J_p = {+-1} x Z_p^x/squares for odd p.
std::vector<LocalPair> subgroup_J(const mpz_class& p);

// Subgroup generated by a set of pairs in {+-1} x Q_p^x/squares.
std::vector<LocalPair> generated_subgroup(const std::vector<LocalPair>& gens, const mpz_class& p);

}  // namespace latforge
