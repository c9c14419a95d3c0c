#include <doctest.h>

#include <random>

#include "latforge/linalg.hpp"
#include "oracles.hpp"

using namespace latforge;

TEST_CASE("smith normal form examples") {
  auto s = smith_normal_form(IntMatrix::identity(3));
  CHECK(s.d == IntMatrix::identity(3));
  CHECK(smith_normal_form(IntMatrix{{2, 0}, {0, 3}}).d == (IntMatrix{{1, 0}, {0, 6}}));
  CHECK(smith_normal_form(IntMatrix{{2, 1}, {1, 2}}).d == (IntMatrix{{1, 0}, {0, 3}}));
}

TEST_CASE("smith normal form against determinantal divisors") {
  std::mt19937 rng(7);
  for (int t = 0; t < 60; ++t) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix m = oracle::random_matrix(rng, r, c, -9, 9);
    auto s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(abs(determinant(s.u)) == 1);
    CHECK(abs(determinant(s.v)) == 1);
    auto ed = oracle::elementary_divisors(m);
    for (std::size_t i = 0; i < std::min(r, c); ++i) {
      mpz_class expect = i < ed.size() ? ed[i] : mpz_class(0);
      CHECK(s.d(i, i) == expect);
    }
    if (r == c) CHECK(abs(determinant(m)) == abs(oracle::cofactor_det(m)));
  }
}

TEST_CASE("hermite normal form") {
  CHECK(hermite_normal_form(IntMatrix::identity(2)).h == IntMatrix::identity(2));
  CHECK(hermite_normal_form(IntMatrix{{0, 1}, {1, 0}}).h == IntMatrix::identity(2));
  IntMatrix m{{2, 4}, {0, 6}};
  CHECK(hermite_normal_form(m).h == m);
  std::mt19937 rng(11);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = 2 + rng() % 3;
    IntMatrix a = oracle::random_matrix(rng, n, n, -6, 6);
    if (determinant(a) == 0) continue;
    // the form is canonical: a unimodular change of rows gives the same result
    IntMatrix b = oracle::random_unimodular(rng, n) * a;
    auto ha = hermite_normal_form(a), hb = hermite_normal_form(b);
    CHECK(ha.h == hb.h);
    CHECK(ha.u * a == ha.h);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(ha.h(i, i) > 0);
      for (std::size_t j = 0; j < i; ++j) {
        CHECK(ha.h(i, j) == 0);
        CHECK(ha.h(j, i) >= 0);
        CHECK(ha.h(j, i) < ha.h(i, i));
      }
    }
  }
}

TEST_CASE("kernel basis") {
  CHECK(kernel_basis(IntMatrix(2, 2)).rows() == 2);
  CHECK(kernel_basis(IntMatrix::identity(2)).rows() == 0);
  IntMatrix k = kernel_basis(IntMatrix{{2, -2}});
  REQUIRE(k.rows() == 1);
  CHECK(abs(k(0, 0)) == 1);
  CHECK(k(0, 0) == k(0, 1));
  std::mt19937 rng(3);
  for (int t = 0; t < 40; ++t) {
    std::size_t r = 1 + rng() % 3, c = 2 + rng() % 4;
    IntMatrix m = oracle::random_matrix(rng, r, c, -5, 5);
    IntMatrix kb = kernel_basis(m);
    CHECK(kb.rows() + rank(m) == c);
    if (kb.rows() == 0) continue;
    CHECK((m * kb.transpose()).is_zero());
    CHECK(is_primitive(kb));
  }
}

TEST_CASE("saturate") {
  CHECK(saturate(IntMatrix{{2, 0}}, 2) == (IntMatrix{{1, 0}}));
  CHECK(saturate(IntMatrix{{1, 1}}, 2) == (IntMatrix{{1, 1}}));
  IntMatrix s = saturate(IntMatrix{{2, 2}, {0, 4}}, 2);
  // the span of two independent vectors in rank 2 saturates to all of Z^2
  CHECK(abs(determinant(s)) == 1);
  CHECK_THROWS_AS(saturate(IntMatrix{{1, 2}, {2, 4}}, 2), MathError);
  std::mt19937 rng(5);
  for (int t = 0; t < 30; ++t) {
    IntMatrix m = oracle::random_matrix(rng, 2, 4, -4, 4);
    if (rank(m) < 2) continue;
    IntMatrix a = saturate(m, 4);
    // oracle: saturation is the rational span intersected with Z^n, detected by SNF divisors of the stack
    auto ed = oracle::elementary_divisors(a);
    for (auto& d : ed) CHECK(d == 1);
    CHECK(row_basis(saturate(a, 4)) == row_basis(a));
    IntMatrix stack = a;
    for (std::size_t i = 0; i < m.rows(); ++i) stack.append_row(m.row(i));
    CHECK(rank(stack) == 2);
  }
}

TEST_CASE("inverse") {
  CHECK(inverse_rational(IntMatrix::identity(3)) == RatMatrix::identity(3));
  CHECK(inverse_rational(IntMatrix{{2}})(0, 0) == mpq_class(1, 2));
  RatMatrix inv = inverse_rational(IntMatrix{{2, -1}, {-1, 2}});
  CHECK(inv == (RatMatrix{{mpq_class(2, 3), mpq_class(1, 3)}, {mpq_class(1, 3), mpq_class(2, 3)}}));
  CHECK(inv * to_rational(IntMatrix{{2, -1}, {-1, 2}}) == RatMatrix::identity(2));
  CHECK_THROWS_AS(inverse_rational(IntMatrix{{1, 2}, {2, 4}}), MathError);
}

TEST_CASE("rationals") {
  CHECK(parse_rational("-3/6") == mpq_class(-1, 2));
  CHECK(to_string(mpq_class(4, 2)) == "2");
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("x"), InputError);
}
