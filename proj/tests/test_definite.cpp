#include <doctest.h>

#include <random>
#include <set>

#include "latforge/definite.hpp"
#include "oracles.hpp"

using namespace latforge;

namespace {

const IntMatrix kGram1Basis{{-16, 8, -8, 0, 0, 0}, {8, -16, 8, 0, 0, 0}, {-8, 8, -6, 0, 0, 0},
                            {0, 0, 0, -2, 1, 0},   {0, 0, 0, 1, -2, 2},  {0, 0, 0, 0, 2, -4}};
const IntMatrix kGramIV{{-2, 1, 0, 0, 0, -1}, {1, -2, 0, 0, 0, 1},   {0, 0, -2, 0, 0, 0},
                        {0, 0, 0, -4, 0, 0},  {0, 0, 0, 0, -16, -8}, {-1, 1, 0, 0, -8, -6}};
const IntMatrix kGramVI{{-2, 0, 0, -1, 0, 0},    {0, -2, 0, -1, 0, 0},  {0, 0, -4, -2, 0, 0},
                        {-1, -1, -2, -4, -2, -2}, {0, 0, 0, -2, -6, -2}, {0, 0, 0, -2, -2, -6}};

// Oracle: count integer matrices with entries in [-b, b] preserving a rank-2 Gramian.
std::size_t brute_group_order_rank2(const IntMatrix& g, long b) {
  std::size_t c = 0;
  for (long a0 = -b; a0 <= b; ++a0)
    for (long a1 = -b; a1 <= b; ++a1)
      for (long a2 = -b; a2 <= b; ++a2)
        for (long a3 = -b; a3 <= b; ++a3) {
          IntMatrix m{{a0, a1}, {a2, a3}};
          if (m.transpose() * g * m == g) ++c;
        }
  return c;
}

}  // namespace

TEST_CASE("LLL output is a change of basis with shorter diagonal") {
  std::mt19937 rng(5);
  for (int t = 0; t < 40; ++t) {
    Lattice l = oracle::random_definite(rng, 2 + rng() % 4);
    IntMatrix u = lll_reduce(l.gram());
    CHECK(abs(determinant(u)) == 1);
    IntMatrix r = u * l.gram() * u.transpose();
    mpz_class mn = r(0, 0);
    // the first reduced vector is within 2^((n-1)/2) of the minimum; check against short vectors
    auto sv = short_vectors(l, mn);
    REQUIRE(!sv.vectors.empty());
    CHECK(sv.norms.front() * (mpz_class(1) << (l.rank() - 1)) >= mn);
  }
}

TEST_CASE("short vectors agree with box enumeration") {
  std::mt19937 rng(11);
  for (int t = 0; t < 50; ++t) {
    Lattice l = oracle::random_definite(rng, 1 + rng() % 4);
    mpz_class bound = 1 + rng() % 12;
    auto sv = short_vectors(l, bound);
    std::set<IntVector> got(sv.vectors.begin(), sv.vectors.end());
    CHECK(got.size() == sv.vectors.size());
    CHECK(got == oracle::box_enumeration(l, bound));
    for (std::size_t i = 0; i < sv.vectors.size(); ++i) CHECK(l.inner(sv.vectors[i], sv.vectors[i]) == sv.norms[i]);
    // negative definite: same vectors, negated norms
    auto neg = short_vectors(rescale(l, -1), bound);
    CHECK(std::set<IntVector>(neg.vectors.begin(), neg.vectors.end()) == got);
  }
}

TEST_CASE("root counts of ADE lattices") {
  CHECK(short_vectors(lattice_A(2), 2).count_with_norm(2) == 3);
  CHECK(short_vectors(lattice_D(4), 2).count_with_norm(2) == 12);
  CHECK(short_vectors(lattice_E(6), 2).count_with_norm(2) == 36);
  CHECK(short_vectors(lattice_E(8), 2).count_with_norm(2) == 120);
  CHECK(short_vectors(rescale(lattice_E(8), -1), 2).count_with_norm(-2) == 120);
}

TEST_CASE("root types") {
  CHECK(to_string(root_sublattice_type(lattice_A(5))) == "A5");
  CHECK(to_string(root_sublattice_type(lattice_D(6))) == "D6");
  for (int n : {6, 7, 8}) CHECK(root_sublattice_type(lattice_E(n)) == parse_root_type("E" + std::to_string(n)));
  Lattice mix = direct_sum({lattice_A(1), lattice_D(4), lattice_A(2), lattice_A(1), rescale(lattice_A(3), 2)});
  CHECK(to_string(root_sublattice_type(mix)) == "A2+A1^2+D4");
  CHECK(root_sublattice_type(rescale(mix, -1)) == root_sublattice_type(mix));
  CHECK(root_sublattice_type(lattice_diag({4, 6})).empty());
  CHECK(to_string(root_sublattice_type(lattice_diag({2, 2, 2, 2}))) == "A1^4");
  std::mt19937 rng(3);
  for (int t = 0; t < 10; ++t) {
    IntMatrix u = oracle::random_unimodular(rng, mix.rank());
    Lattice m2(u.transpose() * mix.gram() * u);
    CHECK(root_sublattice_type(m2) == root_sublattice_type(mix));
    RootSystem rs = root_system(m2, t);
    CHECK(rs.positive.size() == 1 + 12 + 3 + 1);
    CHECK(rs.simple.size() == 8);
  }
}

TEST_CASE("root type strings") {
  CHECK(to_string(parse_root_type("A_1^{\\oplus 2}")) == "A1^2");
  CHECK(to_string(parse_root_type("A1 + A2")) == "A2+A1");
  CHECK(to_string(parse_root_type("D4+A5^4")) == "A5^4+D4");
  CHECK(to_string(parse_root_type("E8(-1)^2")) == "E8^2");
  CHECK(parse_root_type("0").empty());
  CHECK_THROWS_AS(parse_root_type("D3"), InputError);
  CHECK_THROWS_AS(parse_root_type("E9"), InputError);
  CHECK_THROWS_AS(parse_root_type("B2"), InputError);
}

TEST_CASE("root types of the worked example invariant lattices") {
  std::multiset<std::string> got;
  for (const auto& g : {kGram1Basis, kGramIV, kGramVI}) got.insert(to_string(root_sublattice_type(Lattice(g))));
  CHECK(got == std::multiset<std::string>{"A3", "A2+A1", "A1^2"});
}

TEST_CASE("isometry group orders") {
  CHECK(isometry_group(lattice_A(1)).order == 2);
  CHECK(isometry_group(lattice_A(2)).order == 12);
  CHECK(isometry_group(lattice_A(3)).order == 48);
  CHECK(isometry_group(lattice_D(4)).order == 1152);
  CHECK(isometry_group(lattice_diag({1, 1, 1})).order == 48);
  CHECK(isometry_group(lattice_diag({2, 4})).order == 4);
  IsometryGroup e6 = isometry_group(lattice_E(6));
  CHECK(e6.order == 103680);
  CHECK(e6.certified);
  for (const auto& g : e6.generators) CHECK(preserves_form(lattice_E(6), g));
  CHECK(closure(e6.generators, 200000).size() == 103680);
  DefiniteOptions small;
  small.max_elements = 1000;
  IsometryGroup d4 = isometry_group(lattice_D(4), small);
  CHECK(!d4.certified);
  CHECK(d4.order == 1152);
  CHECK(d4.elements.empty());
  IsometryGroup e8 = isometry_group(lattice_E(8));
  CHECK(!e8.certified);
  CHECK(e8.order == 696729600);
  for (const auto& g : e8.generators) CHECK(preserves_form(lattice_E(8), g));
  DefiniteOptions tiny;
  tiny.max_rank = 4;
  CHECK_THROWS_AS(isometry_group(lattice_E(6), tiny), InputError);
}

TEST_CASE("isometry group order of binary forms against brute force") {
  std::mt19937 rng(21);
  for (int t = 0; t < 25; ++t) {
    long a = 1 + rng() % 6, c = 1 + rng() % 6, b = static_cast<long>(rng() % 7) - 3;
    if (b * b >= a * c || 2 * std::abs(b) > std::min(a, c)) continue;  // reduced and definite
    IntMatrix g{{a, b}, {b, c}};
    IsometryGroup grp = isometry_group(Lattice(g));
    // for reduced forms every isometry has entries bounded by sqrt(max/min)+1 <= 3
    CHECK(grp.order == brute_group_order_rank2(g, 3));
    for (const auto& e : grp.elements) CHECK(preserves_form(Lattice(g), e));
  }
}

TEST_CASE("O0 subgroup") {
  // A1: -1 acts as -1 on Z/2, trivially
  CHECK(O0_subgroup(lattice_A(1)).order == 2);
  // A2: W(A2) acts trivially, -1 swaps the two nonzero classes
  CHECK(O0_subgroup(lattice_A(2)).order == 6);
  // D4: Weyl group of order 192 is O0, S3 permutes the three nonzero classes
  CHECK(O0_subgroup(lattice_D(4)).order == 192);
  CHECK(O0_subgroup(lattice_diag({1, 1})).order == 8);
}

TEST_CASE("isometry testing") {
  std::mt19937 rng(8);
  for (int t = 0; t < 25; ++t) {
    Lattice l = oracle::random_definite(rng, 2 + rng() % 4);
    IntMatrix u = oracle::random_unimodular(rng, l.rank());
    Lattice m(u.transpose() * l.gram() * u);
    IsometryWitness w = are_isometric(l, m);
    REQUIRE(w.isometric);
    CHECK(w.map.transpose() * m.gram() * w.map == l.gram());
    CHECK(abs(determinant(w.map)) == 1);
  }
  CHECK(!are_isometric(lattice_diag({2, 6}), Lattice(IntMatrix{{4, 2}, {2, 4}})).isometric);
  CHECK(!are_isometric(lattice_A(2), rescale(lattice_A(2), -1)).isometric);
  CHECK(!are_isometric(Lattice(kGram1Basis), Lattice(kGramVI)).isometric);
  CHECK(are_isometric(Lattice(kGramIV), Lattice(kGramIV)).isometric);
}
