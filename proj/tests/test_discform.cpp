#include <doctest.h>

#include <random>

#include "latforge/discform.hpp"
#include "oracles.hpp"

using namespace latforge;

namespace {

const IntMatrix kGram1Basis{{-16, 8, -8, 0, 0, 0}, {8, -16, 8, 0, 0, 0}, {-8, 8, -6, 0, 0, 0},
                            {0, 0, 0, -2, 1, 0},   {0, 0, 0, 1, -2, 2},  {0, 0, 0, 0, 2, -4}};
const IntMatrix kGramIV{{-2, 1, 0, 0, 0, -1}, {1, -2, 0, 0, 0, 1},   {0, 0, -2, 0, 0, 0},
                        {0, 0, 0, -4, 0, 0},  {0, 0, 0, 0, -16, -8}, {-1, 1, 0, 0, -8, -6}};
const IntMatrix kGramVI{{-2, 0, 0, -1, 0, 0},    {0, -2, 0, -1, 0, 0},  {0, 0, -4, -2, 0, 0},
                        {-1, -1, -2, -4, -2, -2}, {0, 0, 0, -2, -6, -2}, {0, 0, 0, -2, -2, -6}};

FiniteQuadraticForm cyclic(long n, mpq_class q) {
  q.canonicalize();
  return FiniteQuadraticForm({mpz_class(n)}, {q}, {{q}});
}

// <1/2> + <1/4> + [[0,1/8],[1/8,0]]
FiniteQuadraticForm case2_form() {
  mpq_class h(1, 2), f(1, 4), e(1, 8);
  return FiniteQuadraticForm({2, 4, 8, 8}, {h, f, 0, 0},
                             {{h, 0, 0, 0}, {0, f, 0, 0}, {0, 0, 0, e}, {0, 0, e, 0}});
}

}  // namespace

TEST_CASE("discriminant form basics") {
  CHECK(discriminant_form(lattice_U()).is_trivial());
  auto a2 = discriminant_form(lattice_A(2));
  REQUIRE(a2.ngens() == 1);
  CHECK(a2.orders()[0] == 3);
  CHECK(a2.q(0) == mpq_class(2, 3));
  CHECK_THROWS_AS(discriminant_form(Lattice(IntMatrix{{1}})), MathError);
  CHECK(are_isomorphic(discriminant_form(Lattice(kGram1Basis)), case2_form()).isomorphic);
}

TEST_CASE("negation and the C8 coinvariant forms") {
  CHECK(negate(FiniteQuadraticForm()).is_trivial());
  auto h = negate(cyclic(2, mpq_class(1, 2)));
  CHECK(h.q(0) == mpq_class(3, 2));
  auto target = negate(case2_form());
  for (const auto& g : {kGram1Basis, kGramIV, kGramVI}) {
    auto q = discriminant_form(Lattice(g));
    CHECK(are_isomorphic(q, case2_form()).isomorphic);
    CHECK(are_isomorphic(negate(q), target).isomorphic);
  }
}

TEST_CASE("primary parts") {
  auto q6 = cyclic(6, mpq_class(1, 6));
  auto p2 = p_primary_part(q6, 2), p3 = p_primary_part(q6, 3);
  CHECK(p2.orders() == std::vector<mpz_class>{2});
  CHECK(p3.orders() == std::vector<mpz_class>{3});
  CHECK(p_primary_part(FiniteQuadraticForm(), 5).is_trivial());
  // q(<6>) splits as the orthogonal sum of its parts
  CHECK(are_isomorphic(direct_sum(p2, p3), q6).isomorphic);
  CHECK(p_length(case2_form(), 2) == 4);
  CHECK(p_length(case2_form(), 3) == 0);
}

TEST_CASE("isomorphism basics") {
  auto a = cyclic(2, mpq_class(1, 2)), b = cyclic(2, mpq_class(3, 2));
  CHECK_FALSE(are_isomorphic(a, b).isomorphic);
  CHECK_FALSE(oracle::brute_isomorphic(a, b));
  auto self = are_isomorphic(case2_form(), case2_form());
  CHECK(self.isomorphic);
  CHECK(is_form_map(case2_form(), case2_form(), self.witness, 1));
  // u(2) + u(2) and v(2) + v(2) are isomorphic, u(2) and v(2) are not
  auto u = form_from_blocks(parse_genus_symbol("2^+2_II"));
  auto v = form_from_blocks(parse_genus_symbol("2^-2_II"));
  CHECK_FALSE(are_isomorphic(u, v).isomorphic);
  CHECK(are_isomorphic(direct_sum(u, u), direct_sum(v, v)).isomorphic);
}

TEST_CASE("isomorphism agrees with exhaustive search on small forms") {
  std::mt19937 rng(41);
  int compared = 0, positive = 0;
  for (int t = 0; t < 400 && compared < 120; ++t) {
    Lattice l1 = oracle::random_even(rng, 1 + rng() % 3, 3);
    if (discriminant(l1) == 0 || abs(discriminant(l1)) > 64 || abs(discriminant(l1)) == 1) continue;
    auto q1 = discriminant_form(l1);
    // partner: either a basis change of l1 (isomorphic) or an unrelated lattice of the same determinant
    FiniteQuadraticForm q2;
    if (rng() % 2) {
      IntMatrix u = oracle::random_unimodular(rng, l1.rank());
      q2 = discriminant_form(Lattice(u * l1.gram() * u.transpose()));
    } else {
      Lattice l2 = oracle::random_even(rng, l1.rank(), 3);
      if (abs(discriminant(l2)) != abs(discriminant(l1))) continue;
      q2 = discriminant_form(l2);
    }
    auto r = are_isomorphic(q1, q2);
    bool expect = oracle::brute_isomorphic(q1, q2);
    CHECK(r.isomorphic == expect);
    if (r.isomorphic) {
      CHECK(is_form_map(q1, q2, r.witness, 1));
      ++positive;
    }
    ++compared;
  }
  CHECK(compared >= 60);
  CHECK(positive >= 10);
}

TEST_CASE("milgram signature") {
  CHECK(milgram_signature(FiniteQuadraticForm()) == 0);
  CHECK(milgram_signature(discriminant_form(rescale(lattice_E(8), -2))) == 0);
  CHECK(milgram_signature(discriminant_form(lattice_A(2))) == 2);
  std::mt19937 rng(43);
  for (int t = 0; t < 60; ++t) {
    Lattice l = oracle::random_even(rng, 1 + rng() % 4);
    if (discriminant(l) == 0 || abs(discriminant(l)) > 5000) continue;
    Signature s = signature(l);
    int expect = ((s.plus - s.minus) % 8 + 8) % 8;
    CHECK(milgram_signature(discriminant_form(l)) == expect);
  }
}

TEST_CASE("discriminant form of sums and rescalings") {
  std::mt19937 rng(47);
  for (int t = 0; t < 30; ++t) {
    Lattice a = oracle::random_even(rng, 1 + rng() % 2, 3), b = oracle::random_even(rng, 1 + rng() % 2, 3);
    if (discriminant(a) == 0 || discriminant(b) == 0) continue;
    auto qa = discriminant_form(a), qb = discriminant_form(b);
    CHECK(are_isomorphic(discriminant_form(direct_sum(a, b)), direct_sum(qa, qb)).isomorphic);
    CHECK(are_isomorphic(discriminant_form(rescale(a, -1)), negate(qa)).isomorphic);
  }
}

TEST_CASE("genus symbols") {
  auto e = parse_genus_symbol("2^+8_II");
  REQUIRE(e.blocks.size() == 1);
  CHECK(e.blocks[0].kind == BlockKind::Even2U);
  CHECK(e.blocks[0].mult == 4);
  CHECK(render_genus_symbol(e) == "2^+8_II");
  CHECK(parse_genus_symbol("").blocks.empty());
  CHECK(render_genus_symbol(parse_genus_symbol("")) == "");
  auto f = parse_genus_symbol("4^{-2}_\\II , 3^{-3}");
  CHECK(render_genus_symbol(f) == "4^-2_II, 3^-3");
  CHECK(order_of(f) == 16 * 27);
  CHECK(parse_genus_symbol("2^{\xe2\x88\x92" "2}_6") == parse_genus_symbol("2^-2_6"));
  CHECK_THROWS_AS(parse_genus_symbol("3^+2_1"), InputError);
  CHECK_THROWS_AS(parse_genus_symbol("6^+1"), InputError);
  CHECK_THROWS_AS(parse_genus_symbol("2^+1"), InputError);
  CHECK_THROWS_AS(parse_genus_symbol("2^+3_II"), InputError);
  CHECK_THROWS_AS(parse_genus_symbol("2^+2_3"), InputError);
  CHECK_THROWS_AS(parse_genus_symbol("2^+1_3"), InputError);  // sign + needs oddity 1 or 7
  CHECK_THROWS_AS(parse_genus_symbol("2^+1_9"), InputError);
  CHECK_THROWS_AS(parse_genus_symbol("3^2"), InputError);
  for (const char* s : {"2^+1_7, 4^+1_7, 8^+2_II", "2^-2_6, 3^+2, 9^-1", "2^+2_2, 4^+4_II", "4^-2_II, 3^-3",
                        "2^-4_II, 5^+1", "2^+3_3, 8^-1_3, 3^-1"}) {
    auto b = parse_genus_symbol(s);
    CHECK(parse_genus_symbol(render_genus_symbol(b)) == b);
    CHECK(canonical(b) == b);
    CHECK(form_from_blocks(b).size() == order_of(b));
    CHECK(is_nondegenerate(form_from_blocks(b)));
  }
}

TEST_CASE("block decomposition") {
  auto d = block_decomposition(rescale(lattice_E(8), -2));
  CHECK(render_genus_symbol(canonical(d)) == "2^+8_II");
  CHECK_THROWS_AS(block_decomposition(Lattice(IntMatrix{{1}})), MathError);
  auto a2 = block_decomposition(lattice_A(2));
  CHECK(render_genus_symbol(canonical(a2)) == "3^-1");
  auto dd = canonical(block_decomposition(lattice_diag({6, -18})));
  std::vector<int> odd_scales;
  for (const auto& b : dd.blocks)
    if (b.p == 3) odd_scales.push_back(b.k);
  CHECK(odd_scales == std::vector<int>{1, 2});
  // properties: total order and agreement with the computed discriminant form
  std::mt19937 rng(53);
  int n = 0;
  for (int t = 0; t < 200 && n < 60; ++t) {
    Lattice l = oracle::random_even(rng, 1 + rng() % 4);
    if (discriminant(l) == 0 || abs(discriminant(l)) > 3000) continue;
    ++n;
    auto bd = block_decomposition(l);
    CHECK(order_of(bd) == abs(discriminant(l)));
    auto c = canonical(bd);
    CHECK(are_isomorphic(form_from_blocks(bd), discriminant_form(l)).isomorphic);
    CHECK(are_isomorphic(form_from_blocks(c), discriminant_form(l)).isomorphic);
    CHECK(parse_genus_symbol(render_genus_symbol(c)) == c);
    // at most one minus block per odd scale after normalization
    std::map<std::pair<long, int>, int> minus;
    for (const auto& b : c.blocks)
      if (b.kind == BlockKind::OddP && b.sign < 0) minus[{b.p, b.k}] += b.mult;
    for (auto& [k, m] : minus) CHECK(m <= 1);
  }
}
