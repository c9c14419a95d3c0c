#include <doctest.h>

#include <random>

#include "latforge/numtheory.hpp"
#include "latforge/spinor.hpp"
#include "oracles.hpp"

using namespace latforge;

namespace {

RatVector unit(std::size_t n, std::size_t i) {
  RatVector v(n);
  v[i] = 1;
  return v;
}

// U(3)^2 + [[2,3],[3,0]]
Lattice lattice30() {
  return direct_sum({rescale(lattice_U(), 3), rescale(lattice_U(), 3), Lattice(IntMatrix{{2, 3}, {3, 0}})});
}

Lattice lattice40() { return lattice_diag({4, 4, 4, -4, -4}); }

// random isometry of a diagonal or small lattice as a product of reflections in anisotropic vectors
Isometry random_isometry(std::mt19937& rng, const Lattice& l, int k) {
  std::uniform_int_distribution<int> d(-2, 2);
  Isometry m = Isometry::identity(l.rank());
  for (int i = 0; i < k; ++i) {
    RatVector v(l.rank());
    for (auto& x : v) x = d(rng);
    if (l.inner(v, v) == 0) continue;
    m = m * reflection(l, v);
  }
  return m;
}

}  // namespace

TEST_CASE("square classes") {
  CHECK(localize(mpq_class(5), 2).rep == -3);
  CHECK(localize(mpq_class(16), 2).rep == 1);
  CHECK(localize(mpq_class(7), 7).rep == 7);
  CHECK(localize(mpq_class(-1, 3), 2).rep == -3);
  CHECK(localize(mpq_class(20), 2).rep == -3);
  CHECK(localize(mpq_class(2), 7).rep == 1);
  CHECK(localize(mpq_class(3), 7).rep == 3);
  CHECK(local_square_classes(2).size() == 8);
  CHECK(local_square_classes(5).size() == 4);
  // oracle: a is a square in Q_p iff its class is 1; test p-adic squares directly
  for (int a = 1; a < 200; ++a) {
    mpz_class sq = mpz_class(a) * a;
    CHECK(localize(mpq_class(sq), 2).rep == 1);
    CHECK(localize(mpq_class(sq * 17), 2).rep == 1);  // 17 = 1 mod 8
    CHECK(localize(mpq_class(sq * 11), 5).rep == 1);  // 11 = 1 mod 5
  }
}

TEST_CASE("reflections") {
  Lattice d2 = lattice_diag({2, 2});
  CHECK(reflection(d2, unit(2, 0)) == (RatMatrix{{-1, 0}, {0, 1}}));
  RatMatrix t = reflection(lattice_U(), RatVector{1, 1});
  CHECK(t * t == RatMatrix::identity(2));
  Lattice l30 = lattice30();
  CHECK(is_integral_isometry(l30, reflection(l30, unit(6, 4))));
  CHECK_THROWS_AS(reflection(lattice_U(), RatVector{1, 0}), MathError);
}

TEST_CASE("reflection factorization") {
  Lattice d2 = lattice_diag({2, 2});
  CHECK(reflection_factorization(d2, Isometry::identity(2)).empty());
  auto f = reflection_factorization(d2, RatMatrix{{-1, 0}, {0, 1}});
  REQUIRE(f.size() == 1);
  CHECK(f[0][1] == 0);
  auto g = reflection_factorization(lattice_U(), mpq_class(-1) * RatMatrix::identity(2));
  CHECK(g.size() == 2);
  mpq_class prod = 1;
  for (const auto& v : g) prod *= lattice_U().inner(v, v);
  CHECK(square_class(prod) == -1);
  CHECK_THROWS_AS(reflection_factorization(d2, RatMatrix{{2, 0}, {0, 1}}), MathError);
  std::mt19937 rng(61);
  std::vector<Lattice> pool{lattice_U(), lattice30(), lattice40(), lattice_A(2), lattice_D(4),
                            direct_sum(lattice_U(), lattice_diag({6}))};
  for (const auto& l : pool)
    for (int t = 0; t < 8; ++t) {
      Isometry m = random_isometry(rng, l, 1 + rng() % 5);
      auto vs = reflection_factorization(l, m);
      CHECK(vs.size() <= 2 * l.rank());
      Isometry p = Isometry::identity(l.rank());
      for (const auto& v : vs) p = p * reflection(l, v);
      CHECK(p == m);
    }
}

TEST_CASE("spinor norm and f") {
  Lattice l30 = lattice30();
  DetSpinorPair f = f_value(l30, reflection(l30, unit(6, 4)));
  CHECK(f.det == -1);
  CHECK(f.spinor == 2);
  CHECK(f_value(l30, Isometry::identity(6)) == DetSpinorPair{1, 1});
  std::vector<Lattice> pool{lattice_U(), l30, lattice40(), lattice_A(2), lattice_E(6),
                            direct_sum(rescale(lattice_U(), 5), Lattice(IntMatrix{{4, 2}, {2, 6}}))};
  for (const auto& l : pool) {
    auto fm = f_value(l, mpq_class(-1) * Isometry::identity(l.rank()));
    CHECK(fm.det == (l.rank() % 2 ? -1 : 1));
    CHECK(fm.spinor == squarefree_part(discriminant(l)));
  }
  // multiplicativity, and independence from the basis order
  std::mt19937 rng(67);
  for (const auto& l : pool) {
    for (int t = 0; t < 6; ++t) {
      Isometry a = random_isometry(rng, l, 1 + rng() % 4), b = random_isometry(rng, l, 1 + rng() % 4);
      CHECK(spinor_norm(l, a * b) == square_class(mpq_class(spinor_norm(l, a) * spinor_norm(l, b))));
      // the same map written in a permuted basis
      std::size_t n = l.rank();
      IntMatrix perm(n, n);
      for (std::size_t i = 0; i < n; ++i) perm(i, n - 1 - i) = 1;
      Lattice lp(perm.transpose() * l.gram() * perm);
      RatMatrix pr = to_rational(perm);
      Isometry ap = inverse(pr) * a * pr;
      CHECK(spinor_norm(lp, ap) == spinor_norm(l, a));
    }
  }
}

TEST_CASE("hyperbolic plane images") {
  // L = U(t) + L': the reflections in e1 +- e2 give (-1, +-2t)
  for (int t : {1, 2, 3, 5, 8}) {
    Lattice l = direct_sum(rescale(lattice_U(), t), lattice_diag({4}));
    auto fp = f_value(l, reflection(l, RatVector{1, 1, 0}));
    auto fm = f_value(l, reflection(l, RatVector{1, -1, 0}));
    CHECK(fp == DetSpinorPair{-1, squarefree_part(mpz_class(2 * t))});
    CHECK(fm == DetSpinorPair{-1, squarefree_part(mpz_class(-2 * t))});
    CHECK(is_integral_isometry(l, reflection(l, RatVector{1, 1, 0})));
  }
}

TEST_CASE("local O0 membership") {
  Lattice l = lattice40();
  Isometry phi = reflection(l, unit(5, 0)) * reflection(l, RatVector{1, 2, 0, 0, 0});
  CHECK(is_p_integral(phi, 2));
  CHECK(in_O0_local(l, phi, 2));
  LocalPair f2 = localize(f_value(l, phi), 2);
  CHECK(f2.det == 1);
  CHECK(f2.spinor == localize(mpq_class(5), 2));
  CHECK(in_O0_local(l, Isometry::identity(5), 2));
  // a single reflection in a vector of norm 4 is not in O0
  CHECK_FALSE(in_O0_local(l, reflection(l, unit(5, 0)), 2));
  // reflections in vectors of unit or twice-unit norm lie in O0
  std::mt19937 rng(71);
  std::vector<Lattice> pool{lattice30(), direct_sum(rescale(lattice_U(), 5), Lattice(IntMatrix{{4, 2}, {2, 6}})),
                            Lattice(IntMatrix{{2, 1}, {1, 4}}), direct_sum(lattice_A(2), lattice_diag({6, -18}))};
  int hits = 0;
  for (const auto& lat : pool) {
    mpz_class d = discriminant(lat);
    for (const auto& p : prime_divisors(d)) {
      for (int t = 0; t < 200; ++t) {
        RatVector v(lat.rank());
        for (auto& x : v) x = static_cast<int>(rng() % 7) - 3;
        mpq_class a = lat.inner(v, v);
        if (a == 0) continue;
        int val = valuation(a, p);
        if (!(val == 0 || (val == 1 && p == 2))) continue;
        Isometry tv = reflection(lat, v);
        if (!is_p_integral(tv, p)) continue;
        CHECK(in_O0_local(lat, tv, p));
        ++hits;
      }
    }
  }
  CHECK(hits > 50);
  CHECK_THROWS_AS(in_O0_local(lattice_diag({2, 6}), reflection(lattice_diag({2, 6}), RatVector{1, 1}), 2) , MathError);
}

TEST_CASE("two-adic unimodular invariants") {
  CHECK(two_adic_unimodular_invariants(lattice_diag({1, 1, 1})) == TwoAdicInvariants{3, 1, 3, false});
  Lattice v3 = direct_sum(Lattice(IntMatrix{{2, 1}, {1, 2}}), lattice_diag({3}));
  CHECK(two_adic_unimodular_invariants(v3) == TwoAdicInvariants{3, 1, 3, false});
  CHECK(two_adic_unimodular_invariants(lattice_U()) == TwoAdicInvariants{2, 1, 0, true});
  CHECK_THROWS_AS(two_adic_unimodular_invariants(lattice_diag({2})), MathError);
  std::mt19937 rng(73);
  std::vector<Lattice> pool{v3, lattice_diag({1, 3, 5}), lattice_diag({1, -1, 7, 3}), direct_sum(lattice_U(), lattice_diag({5})),
                            lattice_A(2), lattice_E(6)};
  for (const auto& l : pool) {
    auto base = two_adic_unimodular_invariants(l);
    for (int t = 0; t < 10; ++t) {
      IntMatrix u = oracle::random_unimodular(rng, l.rank());
      CHECK(two_adic_unimodular_invariants(Lattice(u * l.gram() * u.transpose())) == base);
    }
  }
}

TEST_CASE("subgroups J") {
  auto j2 = subgroup_J(2);
  CHECK(j2.size() == 8);
  auto has = [&](const std::vector<LocalPair>& s, int d, long r) {
    for (const auto& x : s)
      if (x.det == d && x.spinor.rep == r) return true;
    return false;
  };
  CHECK(has(j2, 1, -3));
  CHECK(has(j2, -1, 2));
  CHECK_FALSE(has(j2, -1, 1));
  for (long p : {3, 5, 7}) {
    auto jp = subgroup_J(p);
    CHECK(jp.size() == 4);
    for (const auto& x : jp) CHECK(x.spinor.rep % p != 0);
  }
  for (const auto& a : j2)
    for (const auto& b : j2) CHECK(std::find(j2.begin(), j2.end(), a * b) != j2.end());
  // the elements (-1, 2x) for units x generate J_p
  for (long p : {2, 3, 5}) {
    std::vector<LocalPair> gens;
    for (const auto& c : local_square_classes(p))
      if (c.rep % p != 0) gens.push_back({-1, localize(mpq_class(2 * c.rep), p)});
    CHECK(generated_subgroup(gens, p) == subgroup_J(p));
  }
}
