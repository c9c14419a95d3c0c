#pragma once

#include <optional>
#include <string>
#include <vector>

#include "latforge/discform.hpp"

namespace latforge {

// gamma: A(L1) -> A(L2) with q2(gamma x) = -q1(x).
struct GlueMap {
  FiniteQuadraticForm source, target;
  IntMatrix images;  // row i: image of source generator i in target generator coordinates
};

// Validates the images against the discriminant forms of l1 and l2.
GlueMap make_glue_map(const Lattice& l1, const Lattice& l2, const IntMatrix& images);
// Some anti-isometry, if one exists.
std::optional<GlueMap> find_glue_map(const Lattice& l1, const Lattice& l2);
// {"source_orders": [...], "target_orders": [...], "images": [[...], ...]}
GlueMap load_glue_map(const std::string& path, const Lattice& l1, const Lattice& l2);
std::string glue_map_to_json(const GlueMap& g);

struct GlueResult {
  Lattice lattice;
  RatMatrix basis;  // rows, in coordinates of l1 + l2
  mpz_class index;  // [Gamma : l1 + l2]
};

GlueResult glue(const Lattice& l1, const Lattice& l2, const GlueMap& gamma);

// l(A(s)) <= 22 - c.
bool length_inequality(const Lattice& s_invariant, int c);

enum class Verdict { No, Yes, Unknown };
std::string to_string(Verdict v);

struct EmbeddingReport {
  Verdict exists = Verdict::Unknown;
  Signature complement_signature;
  std::size_t length = 0;  // l(A(s))
  std::string reason;
  std::optional<Lattice> complement;  // witness when one was confirmed
};

// Primitive embedding of s into an even unimodular lattice of the target signature.
// Candidate complements are tried when the length condition is tight.
EmbeddingReport embedding_exists(const Lattice& s, const Signature& target,
                                 const std::vector<Lattice>& candidates = {});

struct PrimeCheck {
  long p = 2;
  bool pass = false;
  std::string clause;  // which condition fired, or "none"
};

struct NikulinReport {
  bool preconditions = false;
  std::string precondition_note;
  std::vector<PrimeCheck> primes;
  bool verdict = false;
};

NikulinReport nikulin_uniqueness_check(const Lattice& l);
NikulinReport nikulin_surjectivity_check(const Lattice& l);

// Semantic test for an orthogonal summand u(2) (kind 'u') or v(2) (kind 'v') in the 2-part of q.
bool has_order_two_plane(const FiniteQuadraticForm& q, char kind, std::size_t max_elements = 1u << 14);

}  // namespace latforge
