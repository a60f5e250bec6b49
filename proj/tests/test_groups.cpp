#include <doctest.h>

#include <fstream>
#include <numeric>

#include "verbal/group.hpp"

using namespace verbal;

TEST_CASE("cyclic groups") {
  auto c1 = make_group("cyclic:1");
  CHECK(c1.size() == 1);
  auto c4 = make_group("cyclic:4");
  CHECK(c4.size() == 4);
  for (Elt x = 0; x < 4; ++x) CHECK(4 % c4.order_of(x) == 0);
  CHECK(c4.order_of(1) == 4);
  CHECK(c4.inv(1) == 3);
}

TEST_CASE("symmetric group sym:3") {
  auto s3 = make_group("sym:3");
  CHECK(s3.size() == 6);
  int order3 = 0;
  for (Elt x = 0; x < 6; ++x)
    if (s3.order_of(x) == 3) ++order3;
  CHECK(order3 == 2);
  CHECK_FALSE(s3.is_abelian());
}

TEST_CASE("dihedral and klein4") {
  auto d4 = make_group("dihedral:4");
  CHECK(d4.size() == 8);
  CHECK_FALSE(d4.is_abelian());
  CHECK(d4.order_of(1) == 4);   // rotation
  CHECK(d4.order_of(4) == 2);   // reflection
  auto k4 = make_group("klein4");
  CHECK(k4.size() == 4);
  CHECK(k4.exponent() == 2);
}

TEST_CASE("table file round trip and validation") {
  {
    std::ofstream out("z3.json");
    out << R"({"n":3,"table":[[0,1,2],[1,2,0],[2,0,1]]})";
  }
  auto g = make_group("table:z3.json");
  CHECK(g.size() == 3);
  {
    std::ofstream out("bad.json");
    out << R"({"n":2,"table":[[0,1],[1,1]]})";  // 1 has no inverse
  }
  CHECK_THROWS_AS(make_group("table:bad.json"), MalformedTable);
  CHECK_THROWS_AS(make_group("what:3"), ParseError);
}

TEST_CASE("subgroup generation") {
  auto s3 = symmetric_group(3);
  // find a 3-cycle
  Elt three_cycle = 0;
  for (Elt x = 0; x < 6; ++x)
    if (s3.order_of(x) == 3) three_cycle = x;
  auto h = subgroup_generated(s3, {three_cycle});
  CHECK(h.size() == 3);
  CHECK(subgroup_generated(s3, {}).size() == 1);
  std::vector<Elt> all(6);
  std::iota(all.begin(), all.end(), 0);
  CHECK(subgroup_generated(s3, all).size() == 6);
}

TEST_CASE("normal closure") {
  auto s3 = symmetric_group(3);
  Elt transposition = 0;
  for (Elt x = 0; x < 6; ++x)
    if (s3.order_of(x) == 2) {
      transposition = x;
      break;
    }
  CHECK(normal_closure(s3, {transposition}).size() == 6);
  CHECK(normal_closure(s3, {}).size() == 1);
  auto c6 = cyclic_group(6);
  CHECK(normal_closure(c6, {2}).members == subgroup_generated(c6, {2}).members);
}

TEST_CASE("quotient") {
  auto c6 = cyclic_group(6);
  auto n = subgroup_generated(c6, {3});  // order 2
  auto q = quotient(c6, n);
  CHECK(q.group.size() == 3);
  CHECK(q.group.order_of(1) == 3);
  // projection is a homomorphism
  for (Elt x = 0; x < 6; ++x)
    for (Elt y = 0; y < 6; ++y)
      CHECK(q.projection[c6.mul(x, y)] ==
            q.group.mul(q.projection[x], q.projection[y]));
  CHECK(quotient(c6, trivial_subgroup(c6)).group.size() == 6);
  CHECK(quotient(c6, full_subgroup(c6)).group.size() == 1);

  auto s3 = symmetric_group(3);
  Elt transposition = 1;
  for (Elt x = 0; x < 6; ++x)
    if (s3.order_of(x) == 2) transposition = x;
  CHECK_THROWS_AS(quotient(s3, subgroup_generated(s3, {transposition})),
                  NotNormal);
}

TEST_CASE("quotient kills exactly the closure") {
  auto d4 = dihedral_group(4);
  auto n = normal_closure(d4, {2});  // r^2 is central
  auto q = quotient(d4, n);
  std::vector<Elt> kernel;
  for (Elt x = 0; x < d4.size(); ++x)
    if (q.projection[x] == 0) kernel.push_back(x);
  CHECK(kernel == n.members);
}

TEST_CASE("regular representation") {
  auto c5 = cyclic_group(5);
  auto rep = regular_representation(c5);
  // generator goes to a 5-cycle
  std::vector<char> seen(5, 0);
  Elt p = 0;
  for (int i = 0; i < 5; ++i) {
    p = rep[1][p];
    seen[p] = 1;
  }
  CHECK(std::count(seen.begin(), seen.end(), 1) == 5);
  CHECK(rep[0] == std::vector<Elt>{0, 1, 2, 3, 4});

  auto s3 = symmetric_group(3);
  auto rep3 = regular_representation(s3);
  // homomorphism with trivial kernel, fixed-point-free off identity
  for (Elt g = 0; g < 6; ++g) {
    for (Elt h = 0; h < 6; ++h)
      for (Elt x = 0; x < 6; ++x)
        CHECK(rep3[s3.mul(g, h)][x] == rep3[g][rep3[h][x]]);
    if (g != 0) {
      int fixed = 0;
      for (Elt x = 0; x < 6; ++x)
        if (rep3[g][x] == x) ++fixed;
      CHECK(fixed == 0);
    }
  }
}

TEST_CASE("inverse anti-homomorphism identity") {
  // inv(x y) = inv(y) inv(x) across whole tables
  for (const auto& g : {symmetric_group(3), dihedral_group(4), cyclic_group(6)}) {
    for (Elt i = 0; i < g.size(); ++i)
      for (Elt j = 0; j < g.size(); ++j)
        CHECK(g.inv(g.mul(i, j)) == g.mul(g.inv(j), g.inv(i)));
  }
}

TEST_CASE("endomorphism enumeration") {
  auto c4 = cyclic_group(4);
  CHECK(all_endomorphisms(c4).size() == 4);
  auto k4 = klein_four_group();
  // End(Z/2 x Z/2) = 2x2 matrices over F_2: 16 maps
  CHECK(all_endomorphisms(k4).size() == 16);
}

TEST_CASE("direct product") {
  auto g = direct_product(cyclic_group(2), cyclic_group(3));
  CHECK(g.size() == 6);
  CHECK(g.order_of(g.mul(3, 1)) == 6);  // (1,0)*(0,1) generates
}
