#include <doctest.h>

#include <random>

#include "latforge/definite.hpp"
#include "latforge/glue.hpp"
#include "oracles.hpp"

using namespace latforge;

namespace {

// Coordinates of the rows of sub (in l1+l2 coordinates) with respect to the glued basis.
IntMatrix coordinates_in(const RatMatrix& basis, const RatMatrix& sub) {
  RatMatrix c(0, basis.rows());
  for (std::size_t i = 0; i < sub.rows(); ++i) c.append_row(solve_row(basis, sub.row(i)));
  return to_integer(c);
}

void check_glue(const Lattice& l1, const Lattice& l2, const GlueResult& r) {
  CHECK(is_even(r.lattice));
  CHECK(abs(discriminant(r.lattice)) == 1);
  CHECK(r.lattice.rank() == l1.rank() + l2.rank());
  CHECK(oracle::glue_index(r.basis) == r.index);
  CHECK(r.index * r.index == abs(discriminant(l1) * discriminant(l2)));
  std::size_t n1 = l1.rank(), n = r.lattice.rank();
  RatMatrix e1(0, n), e2(0, n);
  for (std::size_t i = 0; i < n; ++i) {
    RatVector e(n);
    e[i] = 1;
    (i < n1 ? e1 : e2).append_row(e);
  }
  IntMatrix s1 = coordinates_in(r.basis, e1), s2 = coordinates_in(r.basis, e2);
  CHECK(is_primitive(s1));
  CHECK(is_primitive(s2));
  Complement c = orthogonal_complement(r.lattice, s1);
  CHECK(c.lattice.rank() == l2.rank());
  CHECK(row_basis(c.basis) == row_basis(s2));
  CHECK(are_isomorphic(discriminant_form(c.lattice), negate(discriminant_form(sublattice(r.lattice, s1))), false).isomorphic);
}

}  // namespace

TEST_CASE("glue of unimodular lattices is the direct sum") {
  Lattice e8 = lattice_E(8), e8n = rescale(lattice_E(8), -1);
  auto g = find_glue_map(e8, e8n);
  REQUIRE(g);
  GlueResult r = glue(e8, e8n, *g);
  CHECK(r.index == 1);
  CHECK(r.lattice.gram() == direct_sum(e8, e8n).gram());
}

TEST_CASE("E6 and A2 glue to E8") {
  Lattice a = rescale(lattice_E(6), -1), b = rescale(lattice_A(2), -1);
  auto g = find_glue_map(a, b);
  REQUIRE(g);
  GlueResult r = glue(a, b, *g);
  check_glue(a, b, r);
  CHECK(r.index == 3);
  CHECK(discriminant(r.lattice) == 1);
  CHECK(short_vectors(r.lattice, 2).count_with_norm(-2) == 120);
  CHECK(are_isometric(r.lattice, rescale(lattice_E(8), -1)).isometric);
}

TEST_CASE("glue of random lattices with their negatives") {
  std::mt19937 rng(31);
  int done = 0;
  for (int t = 0; t < 20; ++t) {
    Lattice l1 = oracle::random_even_definite(rng, 1 + rng() % 3);
    IntMatrix u = oracle::random_unimodular(rng, l1.rank());
    Lattice l2(u.transpose() * rescale(l1, -1).gram() * u);
    auto g = find_glue_map(l1, l2);
    REQUIRE(g);
    GlueResult r = glue(l1, l2, *g);
    check_glue(l1, l2, r);
    CHECK(signature(r.lattice) == Signature{static_cast<int>(l1.rank()), static_cast<int>(l1.rank())});
    ++done;
  }
  CHECK(done == 20);
}

TEST_CASE("invalid glue maps are rejected") {
  Lattice a = lattice_A(2), b = lattice_A(2);
  // q(A2) = 2/3 is not anti-isometric to itself
  CHECK(!find_glue_map(a, b));
  CHECK_THROWS_AS(make_glue_map(a, b, IntMatrix{{1}}), InputError);
  Lattice bn = rescale(lattice_A(2), -1);
  CHECK_NOTHROW(make_glue_map(a, bn, IntMatrix{{1}}));
  CHECK_THROWS_AS(make_glue_map(a, bn, IntMatrix{{0}}), InputError);
}

TEST_CASE("length inequality") {
  IntMatrix g{{-16, 8, -8, 0, 0, 0}, {8, -16, 8, 0, 0, 0}, {-8, 8, -6, 0, 0, 0},
              {0, 0, 0, -2, 1, 0},   {0, 0, 0, 1, -2, 2},  {0, 0, 0, 0, 2, -4}};
  CHECK(length_inequality(Lattice(g), 18));
  CHECK(!length_inequality(Lattice(g), 19));
  CHECK(length_inequality(lattice_E(8), 22));
}

TEST_CASE("embedding existence") {
  Lattice a1n = rescale(lattice_A(1), -1);
  EmbeddingReport r = embedding_exists(a1n, Signature{1, 9});
  CHECK(r.exists == Verdict::Yes);
  CHECK(r.complement_signature == Signature{1, 8});
  CHECK(embedding_exists(direct_sum({a1n, a1n, a1n, a1n}), Signature{0, 4}).exists == Verdict::No);
  CHECK(embedding_exists(a1n, Signature{1, 1}).exists == Verdict::Unknown);
  EmbeddingReport w = embedding_exists(a1n, Signature{1, 1}, {lattice_A(1)});
  CHECK(w.exists == Verdict::Yes);
  REQUIRE(w.complement);
  CHECK(embedding_exists(a1n, Signature{0, 2}).exists == Verdict::No);
  CHECK(embedding_exists(lattice_E(8), Signature{11, 3}).exists == Verdict::Yes);
}

TEST_CASE("Nikulin checks") {
  Lattice u = lattice_U();
  Lattice n1 = direct_sum({u, u, u, rescale(lattice_E(8), -2)});
  NikulinReport a = nikulin_uniqueness_check(n1), b = nikulin_surjectivity_check(n1);
  CHECK(a.verdict);
  CHECK(b.verdict);
  CHECK(!nikulin_uniqueness_check(rescale(lattice_A(2), -1)).preconditions);
  CHECK(nikulin_uniqueness_check(direct_sum(u, lattice_diag({2}))).preconditions);
  CHECK(!nikulin_surjectivity_check(u).verdict);
  // <2>^3 + <-2>: no slack at 2; the 2-part contains u(2) although the decomposition is diagonal
  Lattice d = lattice_diag({2, 2, 2, -2});
  NikulinReport s = nikulin_surjectivity_check(d);
  CHECK(s.verdict);
  // <2> + <-2> + <6>: the odd 2-adic component of rank 3 splits off a plane
  CHECK(nikulin_surjectivity_check(lattice_diag({2, -2, 6})).verdict);
  // <2> + <-4> + <6>: order two elements pair only inside <1/2> + <3/2>
  Lattice e = lattice_diag({2, -4, 6});
  CHECK(!nikulin_surjectivity_check(e).verdict);
  CHECK(nikulin_uniqueness_check(e).verdict);
}

TEST_CASE("order two plane search agrees with exhaustive check") {
  std::mt19937 rng(4);
  for (int t = 0; t < 40; ++t) {
    std::vector<mpz_class> diag;
    std::size_t n = 1 + rng() % 4;
    for (std::size_t i = 0; i < n; ++i) diag.push_back((rng() % 2 ? 2 : -2) * static_cast<long>(1 + 2 * (rng() % 2)));
    Lattice l = lattice_diag(diag);
    FiniteQuadraticForm q = discriminant_form(l);
    // oracle over all element pairs of the full group
    bool u = false, v = false;
    auto els = all_elements(q);
    for (const auto& x : els)
      for (const auto& y : els) {
        bool tx = true, ty = true;
        for (std::size_t i = 0; i < x.size(); ++i) {
          tx = tx && mpz_divisible_p(mpz_class(2 * x[i]).get_mpz_t(), q.orders()[i].get_mpz_t());
          ty = ty && mpz_divisible_p(mpz_class(2 * y[i]).get_mpz_t(), q.orders()[i].get_mpz_t());
        }
        if (!tx || !ty || q.b_of(x, y) != mpq_class(1, 2)) continue;
        if (q.q_of(x) == 0 && q.q_of(y) == 0) u = true;
        if (q.q_of(x) == 1 && q.q_of(y) == 1) v = true;
      }
    CHECK(has_order_two_plane(q, 'u') == u);
    CHECK(has_order_two_plane(q, 'v') == v);
  }
}

TEST_CASE("surjectivity implies uniqueness") {
  std::mt19937 rng(12);
  int surj = 0;
  for (int t = 0; t < 60; ++t) {
    std::vector<mpz_class> diag;
    std::size_t n = 3 + rng() % 3;
    for (std::size_t i = 0; i < n; ++i) {
      long s = i == 0 ? 1 : (i == 1 ? -1 : (rng() % 2 ? 1 : -1));
      diag.push_back(s * 2 * static_cast<long>(1 + rng() % 6));
    }
    Lattice l = lattice_diag(diag);
    if (nikulin_surjectivity_check(l).verdict) {
      ++surj;
      CHECK(nikulin_uniqueness_check(l).verdict);
    }
  }
  CHECK(surj > 5);
}
