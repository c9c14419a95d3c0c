#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "latforge/lattice.hpp"

namespace latforge {

// Finite abelian group with a Q/2Z-valued quadratic form, given on generators.
// q values are kept in [0,2), b values in [0,1).
class FiniteQuadraticForm {
 public:
  FiniteQuadraticForm() = default;
  FiniteQuadraticForm(std::vector<mpz_class> orders, std::vector<mpq_class> q,
                      std::vector<std::vector<mpq_class>> b);

  std::size_t ngens() const { return orders_.size(); }
  const std::vector<mpz_class>& orders() const { return orders_; }
  const mpq_class& q(std::size_t i) const { return q_[i]; }
  const mpq_class& b(std::size_t i, std::size_t j) const { return b_[i][j]; }
  mpz_class size() const;
  bool is_trivial() const { return orders_.empty(); }

  mpq_class q_of(const IntVector& x) const;
  mpq_class b_of(const IntVector& x, const IntVector& y) const;

  // Dual vectors representing the generators, when the form came from a lattice.
  const std::optional<RatMatrix>& coords() const { return coords_; }
  void set_coords(RatMatrix c) { coords_ = std::move(c); }

  std::vector<mpz_class> primes() const;

 private:
  std::vector<mpz_class> orders_;
  std::vector<mpq_class> q_;
  std::vector<std::vector<mpq_class>> b_;
  std::optional<RatMatrix> coords_;
};

mpq_class mod2(const mpq_class& x);
mpq_class mod1(const mpq_class& x);

FiniteQuadraticForm discriminant_form(const Lattice& l);
FiniteQuadraticForm negate(const FiniteQuadraticForm& q);
FiniteQuadraticForm direct_sum(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b);

struct PrimaryPart {
  FiniteQuadraticForm form;
  std::vector<std::size_t> source;  // generator index in the parent form
  std::vector<mpz_class> multiplier;  // part generator = multiplier * parent generator
};
PrimaryPart primary_part(const FiniteQuadraticForm& q, const mpz_class& p);
FiniteQuadraticForm p_primary_part(const FiniteQuadraticForm& q, const mpz_class& p);

// Number of p-power invariant factors (the length l of the p-part).
std::size_t p_length(const FiniteQuadraticForm& q, const mpz_class& p);

bool is_nondegenerate(const FiniteQuadraticForm& q);

// Signature mod 8 from the Gauss sum.
int milgram_signature(const FiniteQuadraticForm& q);

struct IsoResult {
  bool isomorphic = false;
  std::string reason;
  // Row i: image of source generator i in target generator coordinates.
  IntMatrix witness;
};
IsoResult are_isomorphic(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b, bool want_witness = true);

// Checks that the rows of m define a group isomorphism a -> b that carries q_a to s*q_b (s = +1 or -1).
bool is_form_map(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b, const IntMatrix& m, int s,
                 std::string* why = nullptr);

// Enumerate all group elements (coordinates), only for small groups.
std::vector<IntVector> all_elements(const FiniteQuadraticForm& q);

// ---- standard blocks and genus symbols

enum class BlockKind { OddP, Even2U, Even2V, Odd2 };

struct Block {
  BlockKind kind = BlockKind::OddP;
  long p = 2;     // prime
  int k = 1;      // scale exponent: the block lives on (Z/p^k)^r
  int sign = 1;   // OddP only
  int eps = 1;    // Odd2 only, in {1,3,5,7}
  int mult = 1;
  bool operator==(const Block& o) const;
  bool operator<(const Block& o) const;
};

struct BlockDecomposition {
  std::vector<Block> blocks;
  bool operator==(const BlockDecomposition& o) const { return blocks == o.blocks; }
};

// Jordan constituents at p as standard blocks, including the unimodular part (k = 0).
// At p = 2 an odd unimodular part shows up as Odd2 blocks with k = 0.
std::vector<Block> jordan_blocks(const Lattice& l, const mpz_class& p);

// Local Jordan splitting of an even nondegenerate lattice, emitted as standard blocks.
BlockDecomposition block_decomposition(const Lattice& l);

// Canonical representative: merged multiplicities, at most one minus block per odd scale,
// 2-adic odd scales diagonalized, even scales as u^n or u^(n-1) + v.
BlockDecomposition canonical(const BlockDecomposition& d);

BlockDecomposition parse_genus_symbol(const std::string& text);
std::string render_genus_symbol(const BlockDecomposition& d);

FiniteQuadraticForm form_from_blocks(const BlockDecomposition& d);
mpz_class order_of(const BlockDecomposition& d);

// Per-scale data of the 2-part: rank, sign and oddity (or -1 for an even scale).
struct TwoAdicScale {
  int k = 0, rank = 0, sign = 1, oddity = -1;
};
std::vector<TwoAdicScale> two_adic_scales(const BlockDecomposition& d);

}  // namespace latforge
