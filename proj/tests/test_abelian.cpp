#include <doctest.h>

#include <random>
#include <set>

#include "verbal/abelian.hpp"

using namespace verbal;

namespace {

// independent re-multiplication oracle: U * A * V == diag(d)
void check_snf(const std::vector<std::vector<long long>>& a) {
  auto r = smith_normal_form(a);
  const std::size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      long long acc = 0;
      for (std::size_t k = 0; k < rows; ++k)
        for (std::size_t l = 0; l < cols; ++l)
          acc += r.u[i][k] * a[k][l] * r.v[l][j];
      const long long want = (i == j && i < r.diag.size()) ? r.diag[i] : 0;
      CHECK(acc == want);
    }
  for (std::size_t i = 0; i + 1 < r.diag.size(); ++i) {
    if (r.diag[i] == 0) CHECK(r.diag[i + 1] == 0);
    else CHECK(r.diag[i + 1] % r.diag[i] == 0);
  }
}

long long det(std::vector<std::vector<long long>> m) {
  // fraction-free Gaussian elimination is overkill at these sizes; use
  // expansion via permutations for n <= 4
  const std::size_t n = m.size();
  if (n == 0) return 1;
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  long long total = 0;
  std::sort(idx.begin(), idx.end());
  do {
    long long term = 1;
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      term *= m[i][idx[i]];
      for (std::size_t j = i + 1; j < n; ++j)
        if (idx[j] < idx[i]) ++inversions;
    }
    total += (inversions % 2 ? -term : term);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return total;
}

}  // namespace

TEST_CASE("smith normal form basics") {
  check_snf({{1, 0}, {0, 1}});
  auto id = smith_normal_form({{1, 0}, {0, 1}});
  CHECK(id.diag == std::vector<long long>{1, 1});

  auto r = smith_normal_form({{2, 0}, {0, 3}});
  CHECK(r.diag == std::vector<long long>{1, 6});
  check_snf({{2, 0}, {0, 3}});

  auto z = smith_normal_form({{0, 0}, {0, 0}});
  CHECK(z.diag == std::vector<long long>{0, 0});

  check_snf({{2, 4, 4}, {-6, 6, 12}, {10, 4, 16}});
  check_snf({{1, 2, 3}, {4, 5, 6}});
  check_snf({{6}, {10}, {15}});
}

TEST_CASE("smith normal form randomized with unimodularity") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> entry(-9, 9);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 1 + t % 4, m = 1 + (t / 4) % 4;
    std::vector<std::vector<long long>> a(n, std::vector<long long>(m));
    for (auto& row : a)
      for (auto& x : row) x = entry(rng);
    check_snf(a);
    auto r = smith_normal_form(a);
    CHECK(std::abs(det(r.u)) == 1);
    CHECK(std::abs(det(r.v)) == 1);
  }
}

TEST_CASE("canonical abelian groups") {
  auto g = canonical_abelian(0, {2, 3});
  CHECK(g.torsion == std::vector<long long>{6});
  auto h = canonical_abelian(1, {4, 6, 1});
  CHECK(h.free_rank == 1);
  CHECK(h.torsion == std::vector<long long>{2, 12});
}

TEST_CASE("tensor product") {
  FgAbelianGroup z2{0, {2}}, z3{0, {3}}, z5{0, {5}};
  CHECK(tensor_product(z2, z3).is_trivial());
  CHECK(tensor_product(z5, z5).torsion == std::vector<long long>{5});

  FgAbelianGroup m{2, {4}};
  auto t = tensor_product(m, m);
  CHECK(t.free_rank == 4);
  CHECK(t.torsion == std::vector<long long>{4, 4, 4, 4, 4});
  // order-4 torsion element exists
  FgAbelianGroup::Vec v = t.zero();
  v[t.free_rank] = 1;
  CHECK(t.order_of(v) == 4);

  // commutativity up to invariant factors
  FgAbelianGroup a{1, {2, 4}}, b{0, {6}};
  CHECK(tensor_product(a, b) == tensor_product(b, a));
  // distributes over direct sums: (Z + Z/2) (x) Z/6 = Z/6 + Z/2
  FgAbelianGroup s{1, {2}}, z6{0, {6}};
  auto lhs = tensor_product(s, z6);
  CHECK(lhs == canonical_abelian(0, {6, 2}));
}

TEST_CASE("abelianization") {
  auto s3 = symmetric_group(3);
  auto ab = abelianization(s3);
  CHECK(ab.group.torsion == std::vector<long long>{2});
  CHECK(ab.group.free_rank == 0);
  // coordinate map is a homomorphism onto the group
  for (Elt x = 0; x < 6; ++x)
    for (Elt y = 0; y < 6; ++y)
      CHECK(ab.coords[s3.mul(x, y)] ==
            ab.group.add(ab.coords[x], ab.coords[y]));

  auto c6 = cyclic_group(6);
  CHECK(abelianization(c6).group.torsion == std::vector<long long>{6});

  auto k4 = klein_four_group();
  auto abk = abelianization(k4);
  CHECK(abk.group.torsion == std::vector<long long>{2, 2});
  // coords map is bijective for abelian groups
  std::set<FgAbelianGroup::Vec> images(abk.coords.begin(), abk.coords.end());
  CHECK(images.size() == 4);

  auto d4 = dihedral_group(4);
  CHECK(abelianization(d4).group.torsion == std::vector<long long>{2, 2});
}

TEST_CASE("pair tensor grid") {
  auto abA = abelianization(cyclic_group(3));
  auto abB = abelianization(cyclic_group(3));
  PairTensorGroup t(abA.group, abB.group);
  CHECK(t.order() == 3);
  auto x = t.pure({1}, {1});
  CHECK(t.order() == 3);
  CHECK(t.add(x, t.add(x, x)) == t.zero());
  CHECK(t.neg(x) == t.scale(2, x));
  CHECK(t.swap_sides(x) == x);

  auto k4ab = abelianization(klein_four_group()).group;
  PairTensorGroup tk(k4ab, k4ab);
  CHECK(tk.order() == 16);
  auto e01 = tk.pure({1, 0}, {0, 1});
  auto e10 = tk.pure({0, 1}, {1, 0});
  CHECK(tk.swap_sides(e01) == e10);
  CHECK(tk.canonical().torsion == std::vector<long long>{2, 2, 2, 2});

  // indexing round trip
  for (long long i = 0; i < tk.order(); ++i)
    CHECK(tk.index_of(tk.element_at(i)) == i);
}
