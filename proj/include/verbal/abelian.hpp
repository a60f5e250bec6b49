#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "verbal/group.hpp"

namespace verbal {

/// Finitely generated abelian group in invariant-factor form:
/// Z^free_rank + Z/d1 + Z/d2 + ... with d1 | d2 | ..., each di >= 2.
/// Elements are integer vectors of length free_rank + torsion.size(),
/// free coordinates first, torsion coordinates reduced mod their factor.
struct FgAbelianGroup {
  std::size_t free_rank = 0;
  std::vector<long long> torsion;

  std::size_t coords() const { return free_rank + torsion.size(); }
  /// Order of the torsion part alone; meaningful group order only when
  /// free_rank == 0.
  long long torsion_order() const {
    long long o = 1;
    for (long long d : torsion) o *= d;
    return o;
  }
  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }

  using Vec = std::vector<long long>;
  Vec zero() const { return Vec(coords(), 0); }
  Vec reduce(Vec v) const;
  Vec add(const Vec& a, const Vec& b) const;
  Vec neg(const Vec& a) const;
  Vec scale(long long k, const Vec& a) const;
  /// Additive order of an element (0 for infinite order).
  long long order_of(const Vec& a) const;
  /// Enumerates all elements; requires free_rank == 0.
  std::vector<Vec> all_elements() const;

  bool operator==(const FgAbelianGroup& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
  std::string to_string() const;
};

/// Smith normal form over exact big integers. Returns (d, u, v) with
/// u * a * v = diag(d), u and v unimodular, and d a divisibility chain
/// d[0] | d[1] | ... with nonnegative entries.
struct SmithResult {
  std::vector<long long> diag;
  std::vector<std::vector<long long>> u;
  std::vector<std::vector<long long>> v;
};
SmithResult smith_normal_form(const std::vector<std::vector<long long>>& a);

/// Canonicalizes (free_rank, arbitrary cyclic orders) into invariant factors.
FgAbelianGroup canonical_abelian(std::size_t free_rank,
                                 const std::vector<long long>& cyclic_orders);

/// Tensor product over Z, distributing Z_a (x) Z_b = Z_gcd(a,b) and reducing
/// the resulting cyclic summands to a divisibility chain.
FgAbelianGroup tensor_product(const FgAbelianGroup& m, const FgAbelianGroup& n);

/// Abelianization of a finite group: the invariant-factor group, the
/// per-element coordinate map, and the coset group G/[G,G] with projection.
struct Abelianization {
  FgAbelianGroup group;
  std::vector<FgAbelianGroup::Vec> coords;  // indexed by source element
  QuotientResult coset;                     // G/[G,G] as a table group
};
Abelianization abelianization(const FiniteGroup& g);

/// The tensor group M (x) N kept in "grid" presentation: one cyclic summand
/// Z_{e(p,q)} per pair of invariant-factor generators of M and N, where
/// e(p,q) = gcd of the generator orders (0 meaning Z). Element arithmetic
/// stays on the grid so that pure tensors and the transpose are immediate;
/// canonical invariant factors are available for reporting.
class PairTensorGroup {
 public:
  PairTensorGroup() = default;
  PairTensorGroup(const FgAbelianGroup& m, const FgAbelianGroup& n);

  using Vec = std::vector<long long>;  // grid coordinates, row-major over (p,q)

  std::size_t coords() const { return orders_.size(); }
  const std::vector<long long>& orders() const { return orders_; }
  bool is_trivial() const;
  /// Number of elements; requires all grid orders finite.
  long long order() const;

  Vec zero() const { return Vec(coords(), 0); }
  Vec reduce(Vec v) const;
  Vec add(const Vec& a, const Vec& b) const;
  Vec neg(const Vec& a) const;
  Vec scale(long long k, const Vec& a) const;
  /// Pure tensor of coordinate vectors of M and N.
  Vec pure(const FgAbelianGroup::Vec& x, const FgAbelianGroup::Vec& y) const;
  /// Transpose x (x) y -> y (x) x; requires M == N structurally.
  Vec swap_sides(const Vec& a) const;
  /// Image under homs of the factors, expressed on another grid: the hom
  /// sends generator p of M to the vector mimg[p] of M', likewise nimg.
  Vec map_through(const PairTensorGroup& target,
                  const std::vector<FgAbelianGroup::Vec>& mimg,
                  const std::vector<FgAbelianGroup::Vec>& nimg,
                  const Vec& a) const;
  /// Enumerates all grid elements; requires finiteness.
  std::vector<Vec> all_elements() const;
  long long index_of(const Vec& a) const;
  Vec element_at(long long idx) const;

  /// Canonical invariant factors of the grid group.
  FgAbelianGroup canonical() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<long long> orders_;  // 0 = infinite cyclic
};

}  // namespace verbal
