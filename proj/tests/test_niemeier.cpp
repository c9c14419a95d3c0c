#include <doctest.h>

#include "latforge/niemeier.hpp"

using namespace latforge;

TEST_CASE("group orders by name") {
  CHECK(group_order("1") == 1);
  CHECK(group_order("S4") == 24);
  CHECK(group_order("A4") == 12);
  CHECK(group_order("S2xS2") == 4);
  CHECK(group_order("GL(3,2)") == 168);
  CHECK(group_order("F2^3:GL(3,2)") == 1344);
  CHECK(group_order("M12") == 95040);
  CHECK(group_order("M24") == 244823040);
  CHECK_THROWS_AS(group_order("Q8x"), InputError);
}

TEST_CASE("catalog rows") {
  auto cat = catalog();
  REQUIRE(cat.size() == 23);
  int rank24 = 0;
  for (const auto& e : cat) {
    CHECK(e.o1 * group_order(e.o2) == e.total);
    if (e.root_type.rank() == 24) ++rank24;
  }
  CHECK(rank24 == 23);
  CHECK(catalog_entry(cat, "A1^24").total == 244823040);
  CHECK(catalog_entry(cat, "E6^4").total == 48);
  CHECK(cat[0].total == 1);
  CHECK(to_string(cat[0].root_type) == "D24");
}

TEST_CASE("component order follows the label") {
  auto c = components_in_order("D_4 \\oplus A_5^{\\oplus 2}");
  REQUIRE(c.size() == 3);
  CHECK(c[0].type == 'D');
  CHECK(c[2] == RootComponent{'A', 5});
}

TEST_CASE("shipped Niemeier lattices") {
  auto cat = catalog();
  for (const char* t : {"A1^24", "A2^12", "A5^4+D4"}) {
    NiemeierLattice n = construct(catalog_entry(cat, t));
    CHECK(n.lattice.rank() == 24);
    CHECK(is_even(n.lattice));
    CHECK(discriminant(n.lattice) == 1);
    CHECK(root_sublattice_type(n.lattice) == parse_root_type(t));
  }
  NiemeierLattice a1 = construct(catalog_entry(cat, "A1^24"));
  CHECK(short_vectors(a1.lattice, 2).count_with_norm(-2) == 24);
  CHECK(a1.glue_order == 4096);
  NiemeierLattice a5 = construct(catalog_entry(cat, "A5^4+D4"));
  // (w1 + w3)/2 with w1 = sum (v_{1+5i} + v_{5+5i}), w3 = sum v_{3+5i}
  RatVector h(24);
  for (int i = 0; i < 4; ++i) {
    h[5 * i] += mpq_class(1, 2);
    h[4 + 5 * i] += mpq_class(1, 2);
    h[2 + 5 * i] += mpq_class(1, 2);
  }
  CHECK(is_integral(solve_row(a5.basis, h)));
  CHECK_THROWS_AS(construct(catalog_entry(cat, "D24")), InputError);
}
