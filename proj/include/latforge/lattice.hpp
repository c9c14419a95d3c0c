#pragma once

#include <string>

#include "latforge/linalg.hpp"

namespace latforge {

class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(IntMatrix gram, std::string label = {});

  const IntMatrix& gram() const { return gram_; }
  const std::string& label() const { return label_; }
  void set_label(std::string l) { label_ = std::move(l); }
  std::size_t rank() const { return gram_.rows(); }

  // <x, y> for rational coordinate vectors in the lattice basis.
  mpq_class inner(const RatVector& x, const RatVector& y) const;
  mpz_class inner(const IntVector& x, const IntVector& y) const;

 private:
  IntMatrix gram_;
  std::string label_;
};

struct Signature {
  int plus = 0;
  int minus = 0;
  bool operator==(const Signature& o) const { return plus == o.plus && minus == o.minus; }
};

struct DiscriminantGroup {
  std::vector<mpz_class> orders;  // d1 | d2 | ..., all > 1
  RatMatrix generators;           // row i: generator of order orders[i], as a dual vector in lattice coordinates
  std::size_t length() const { return orders.size(); }
  mpz_class size() const;
};

Signature signature(const Lattice& l);
bool is_even(const Lattice& l);
mpz_class discriminant(const Lattice& l);
bool is_nondegenerate(const Lattice& l);
bool is_positive_definite(const Lattice& l);
bool is_negative_definite(const Lattice& l);
bool is_definite(const Lattice& l);

DiscriminantGroup discriminant_group(const Lattice& l);

Lattice rescale(const Lattice& l, const mpz_class& lambda);
Lattice direct_sum(const Lattice& a, const Lattice& b);
Lattice direct_sum(const std::vector<Lattice>& parts);

// Gramian of the sublattice spanned by the rows of basis (integer coordinates).
Lattice sublattice(const Lattice& l, const IntMatrix& basis);
// Same with rational coordinates; must be integral.
Lattice sublattice(const Lattice& l, const RatMatrix& basis);

struct Complement {
  IntMatrix basis;
  Lattice lattice;
  bool degenerate = false;
};
Complement orthogonal_complement(const Lattice& l, const IntMatrix& sub_basis);

// True iff m^T G m = G (column convention: x -> m x).
bool preserves_form(const Lattice& l, const RatMatrix& m);
bool preserves_form(const Lattice& l, const IntMatrix& m);

// Named building blocks.
Lattice lattice_U();
Lattice lattice_A(int n);
Lattice lattice_D(int n);
Lattice lattice_E(int n);
Lattice lattice_diag(const std::vector<mpz_class>& entries);

// Lattice JSON: {"label": optional, "gram": [[...]]}.
Lattice lattice_from_json_text(const std::string& text);
Lattice load_lattice(const std::string& path);
std::string lattice_to_json(const Lattice& l);

}  // namespace latforge
