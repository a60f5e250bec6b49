#include <doctest.h>

#include <random>

#include "verbal/descriptor.hpp"
#include "verbal/metric.hpp"

using namespace verbal;

namespace {

Perm random_perm(std::size_t n, std::mt19937_64& rng) {
  Perm p = Perm::identity(n);
  for (std::size_t i = n; i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(p.img[i - 1], p.img[pick(rng)]);
  }
  return p;
}

MatFp random_invertible(std::size_t n, long long p, std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> entry(0, p - 1);
  while (true) {
    MatFp m{n, p, std::vector<long long>(n * n)};
    for (auto& x : m.a) x = entry(rng);
    if (rank_fp(m) == n) return m;
  }
}

MatD random_signed_perm(std::size_t n, std::mt19937_64& rng) {
  // signed permutation matrices are orthogonal, hence unitary over R
  Perm s = random_perm(n, rng);
  std::uniform_int_distribution<int> coin(0, 1);
  MatD m{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t j = 0; j < n; ++j)
    m.at(s.img[j], j) = coin(rng) ? 1.0 : -1.0;
  return m;
}

WreathMetricElement random_wreath(std::size_t b, std::size_t inner,
                                  std::mt19937_64& rng) {
  WreathMetricElement e;
  e.tau = random_perm(b, rng);
  for (std::size_t i = 0; i < b; ++i) e.comps.push_back(random_perm(inner, rng));
  return e;
}

std::vector<Perm> all_perms(std::size_t n) {
  std::vector<Elt> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Elt>(i);
  std::vector<Perm> out;
  do {
    out.push_back(Perm{v});
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

}  // namespace

TEST_CASE("hamming basics") {
  const Perm id3 = Perm::identity(3);
  CHECK(hamming_dist(id3, id3) == Rat(0));
  Perm cycle{{1, 2, 0}};
  CHECK(hamming_dist(cycle, id3) == Rat(1));
  Perm swap4{{1, 0, 2, 3}};
  CHECK(hamming_dist(swap4, Perm::identity(4)) == Rat(1, 2));
  CHECK_THROWS_AS(hamming_dist(id3, Perm::identity(4)), SizeMismatch);
}

TEST_CASE("hamming metric axioms, exhaustive to degree 4 and sampled at 5") {
  for (std::size_t n : {3u, 4u}) {
    const auto perms = all_perms(n);
    for (const auto& x : perms)
      for (const auto& y : perms) {
        CHECK((hamming_dist(x, y) == Rat(0)) == (x == y));
        for (const auto& z : perms) {
          // bi-invariance
          CHECK(hamming_dist(x, y) == hamming_dist(z * x, z * y));
          CHECK(hamming_dist(x, y) == hamming_dist(x * z, y * z));
          // triangle
          CHECK(hamming_dist(x, z) <= hamming_dist(x, y) + hamming_dist(y, z));
        }
      }
  }
  std::mt19937_64 rng(1);
  for (int t = 0; t < 10000; ++t) {
    const Perm x = random_perm(5, rng), y = random_perm(5, rng),
               z = random_perm(5, rng);
    CHECK(hamming_dist(x, y) == hamming_dist(z * x, z * y));
    CHECK(hamming_dist(x, y) == hamming_dist(x * z, y * z));
    CHECK(hamming_dist(x, z) <= hamming_dist(x, y) + hamming_dist(y, z));
  }
}

TEST_CASE("rank metric") {
  auto i2 = MatFp::identity(2, 3);
  CHECK(rank_dist(i2, i2) == Rat(0));
  // scalar 2I vs I over F_3
  MatFp two = i2;
  two.at(0, 0) = 2;
  two.at(1, 1) = 2;
  CHECK(rank_dist(two, i2) == Rat(1));
  // n-cycle permutation matrix vs identity: rank(P - I) = n - 1
  for (std::size_t n : {3u, 5u}) {
    Perm cyc = Perm::identity(n);
    for (std::size_t i = 0; i < n; ++i) cyc.img[i] = static_cast<Elt>((i + 1) % n);
    CHECK(rank_dist(MatFp::from_perm(cyc, 2), MatFp::identity(n, 2)) ==
          Rat(static_cast<long long>(n - 1), static_cast<long long>(n)));
  }
  // rank_dist(1, M) = 1 - dim ker(M - 1)/n: spot check with a transposition
  Perm swap4{{1, 0, 2, 3}};
  CHECK(rank_dist(MatFp::identity(4, 5), MatFp::from_perm(swap4, 5)) == Rat(1, 4));

  std::mt19937_64 rng(2);
  for (int t = 0; t < 10000; ++t) {
    auto x = random_invertible(3, 3, rng), y = random_invertible(3, 3, rng),
         z = random_invertible(3, 3, rng);
    CHECK((rank_dist(x, y) == Rat(0)) == (x.a == y.a));
    CHECK(rank_dist(x, y) == rank_dist(z * x, z * y));
    CHECK(rank_dist(x, y) == rank_dist(x * z, y * z));
    CHECK(rank_dist(x, z) <= rank_dist(x, y) + rank_dist(y, z));
  }
}

TEST_CASE("hilbert-schmidt metric and trace") {
  auto id = MatD::identity(4);
  CHECK(hs_dist(id, id) <= 1e-12);
  MatD minus{4, std::vector<double>(16, 0.0)};
  for (int i = 0; i < 4; ++i) minus.at(i, i) = -1.0;
  CHECK(hs_dist(id, minus) == doctest::Approx(2.0).epsilon(1e-12));
  // trace of a permutation matrix = fixed points / n
  Perm s{{1, 0, 2, 3}};
  CHECK(normalized_trace(MatD::from_perm(s)) == doctest::Approx(0.5));
  check_unitary(MatD::from_perm(s));
  MatD bad = id;
  bad.at(0, 0) = 2.0;
  CHECK_THROWS_AS(check_unitary(bad), NotUnitary);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 10000; ++t) {
    auto x = random_signed_perm(4, rng), y = random_signed_perm(4, rng),
         z = random_signed_perm(4, rng);
    CHECK(std::abs(hs_dist(x, y) - hs_dist(z * x, z * y)) < 1e-9);
    CHECK(std::abs(hs_dist(x, y) - hs_dist(x * z, y * z)) < 1e-9);
    CHECK(hs_dist(x, z) <= hs_dist(x, y) + hs_dist(y, z) + 1e-9);
  }
}

TEST_CASE("wreath metric") {
  const std::size_t nb = 4, inner = 3;
  const auto id = wreath_metric_identity(nb, inner);
  CHECK(wreath_metric_dist(id, id) == Rat(0));

  // permutations differing everywhere, same tuple: distance 1
  WreathMetricElement x = id;
  x.tau = Perm{{1, 2, 3, 0}};
  CHECK(wreath_metric_dist(x, id) == Rat(1));

  // identical permutations, one coordinate at inner distance 1, |B| = 4
  WreathMetricElement y = id;
  y.comps[2] = Perm{{1, 2, 0}};
  CHECK(wreath_metric_dist(y, id) == Rat(1, 4));

  // group laws and metric axioms on random elements
  std::mt19937_64 rng(4);
  Rat diameter(0);
  for (int t = 0; t < 10000; ++t) {
    auto a = random_wreath(nb, inner, rng), b = random_wreath(nb, inner, rng),
         c = random_wreath(nb, inner, rng);
    CHECK(wreath_metric_mul(a, wreath_metric_inv(a)) == id);
    CHECK(wreath_metric_mul(wreath_metric_mul(a, b), c) ==
          wreath_metric_mul(a, wreath_metric_mul(b, c)));
    const Rat d = wreath_metric_dist(a, b);
    diameter = std::max(diameter, d);
    CHECK((d == Rat(0)) == (a == b));
    CHECK(d <= Rat(1));
    CHECK(d == wreath_metric_dist(wreath_metric_mul(c, a), wreath_metric_mul(c, b)));
    CHECK(d == wreath_metric_dist(wreath_metric_mul(a, c), wreath_metric_mul(b, c)));
    CHECK(wreath_metric_dist(a, c) <=
          wreath_metric_dist(a, b) + wreath_metric_dist(b, c));
  }
  CHECK(diameter == Rat(1));  // attained, and never exceeded
}

TEST_CASE("defect measurement on an exact homomorphism") {
  // regular representation of Z/5: multiplicative defect 0, freeness 1
  const std::size_t n = 5;
  auto mul = [](Elt a, Elt b) { return static_cast<Elt>((a + b) % 5); };
  auto map = [&](Elt g) {
    Perm p = Perm::identity(n);
    for (std::size_t i = 0; i < n; ++i) p.img[i] = mul(g, static_cast<Elt>(i));
    return p;
  };
  std::vector<Elt> window{0, 1, 2, 3, 4};
  SymHamming carrier{n};
  auto rep = measure_defects("sofic", window, Elt{0}, mul, map, carrier,
                             [](Elt g) { return std::to_string(g); });
  CHECK(*rep.mult_defect == Rat(0));
  CHECK(*rep.free_defect == Rat(1));

  // everything-to-identity map has freeness defect 0
  auto collapse = [&](Elt) { return Perm::identity(n); };
  auto rep2 = measure_defects("sofic", window, Elt{0}, mul, collapse, carrier,
                              [](Elt g) { return std::to_string(g); });
  CHECK(*rep2.free_defect == Rat(0));

  // perturbing one image point moves the defect by at most 4/n
  auto perturbed = [&](Elt g) {
    Perm p = map(g);
    if (g == 1) std::swap(p.img[0], p.img[1]);
    return p;
  };
  auto rep3 = measure_defects("sofic", window, Elt{0}, mul, perturbed, carrier,
                              [](Elt g) { return std::to_string(g); });
  CHECK(*rep3.mult_defect > Rat(0));
  CHECK(*rep3.mult_defect <= Rat(4, static_cast<long long>(n)));
}

TEST_CASE("window table throws when not closed") {
  ApproxTable<Elt, Perm> table;
  table.table[0] = Perm::identity(3);
  CHECK_THROWS_AS(table(1), WindowNotClosed);
  CHECK(table(0) == Perm::identity(3));
}

TEST_CASE("conjugated maps have identical hamming defects") {
  // bi-invariance corollary: defects of g -> c map(g) c^-1 match map's
  const std::size_t n = 6;
  std::mt19937_64 rng(11);
  auto mul = [](Elt a, Elt b) { return static_cast<Elt>((a + b) % 6); };
  std::vector<Perm> table;
  for (std::size_t g = 0; g < 6; ++g) {
    Perm p = Perm::identity(n);
    for (std::size_t i = 0; i < n; ++i) p.img[i] = static_cast<Elt>((g + i) % 6);
    table.push_back(p);
  }
  // perturb one image
  std::swap(table[2].img[0], table[2].img[3]);
  const Perm c = random_perm(n, rng);
  std::vector<Elt> window{0, 1, 2, 3, 4, 5};
  SymHamming carrier{n};
  auto name = [](Elt g) { return std::to_string(g); };
  auto rep1 = measure_defects("sofic", window, Elt{0}, mul,
                              [&](Elt g) { return table[g]; }, carrier, name);
  auto rep2 = measure_defects(
      "sofic", window, Elt{0}, mul,
      [&](Elt g) { return c * table[g] * c.inverse(); }, carrier, name);
  CHECK(*rep1.mult_defect == *rep2.mult_defect);
  CHECK(*rep1.free_defect == *rep2.free_defect);
}

TEST_CASE("metric descriptors") {
  CHECK(parse_metric_descriptor("sym:5").kind == MetricDescriptor::Kind::sym_hamming);
  auto gl = parse_metric_descriptor("gl:4:3");
  CHECK(gl.n == 4);
  CHECK(gl.p == 3);
  auto wm = parse_metric_descriptor("wreathmetric(sym:3,4)");
  CHECK(wm.b == 4);
  CHECK(wm.inner == "sym:3");
  CHECK(parse_metric_descriptor(wm.to_string()).inner == "sym:3");
  CHECK_THROWS_AS(parse_metric_descriptor("nope:3"), ParseError);
}

TEST_CASE("descriptor grammars round trip") {
  for (const std::string text :
       {"product(cyclic:2,cyclic:2,nil:2)",
        "product(sym:3,cyclic:4,burnside:2,engine=generic)"}) {
    const auto d = parse_product_descriptor(text);
    CHECK(d.to_string() == text);
    CHECK(parse_product_descriptor(d.to_string()).a == d.a);
  }
  const auto w = parse_wreath_descriptor("wreath(cyclic:2,cyclic:3,nil:2)");
  CHECK(w.to_string() == "wreath(cyclic:2,cyclic:3,nil:2)");
  for (const std::string text : {"sym:7", "gl:3:5", "unitary:12",
                                 "wreathmetric(gl:2:3,6)"}) {
    CHECK(parse_metric_descriptor(text).to_string() == text);
  }
  CHECK_THROWS_AS(parse_product_descriptor("product(a,b)"), ParseError);
  CHECK_THROWS_AS(parse_product_descriptor("product(a,b,nil:2,foo=1)"), ParseError);
  CHECK_THROWS_AS(parse_wreath_descriptor("wreath(a,b,zzz:9)"), ParseError);
}
