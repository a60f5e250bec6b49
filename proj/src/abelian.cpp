#include "verbal/abelian.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <boost/multiprecision/cpp_int.hpp>

namespace verbal {

using boost::multiprecision::cpp_int;

namespace {

long long mod_reduce(long long x, long long d) {
  if (d == 0) return x;
  long long r = x % d;
  if (r < 0) r += d;
  return r;
}

}  // namespace

FgAbelianGroup::Vec FgAbelianGroup::reduce(Vec v) const {
  for (std::size_t i = 0; i < torsion.size(); ++i)
    v[free_rank + i] = mod_reduce(v[free_rank + i], torsion[i]);
  return v;
}

FgAbelianGroup::Vec FgAbelianGroup::add(const Vec& a, const Vec& b) const {
  Vec r(coords());
  for (std::size_t i = 0; i < coords(); ++i) r[i] = a[i] + b[i];
  return reduce(std::move(r));
}

FgAbelianGroup::Vec FgAbelianGroup::neg(const Vec& a) const {
  Vec r(coords());
  for (std::size_t i = 0; i < coords(); ++i) r[i] = -a[i];
  return reduce(std::move(r));
}

FgAbelianGroup::Vec FgAbelianGroup::scale(long long k, const Vec& a) const {
  Vec r(coords());
  for (std::size_t i = 0; i < coords(); ++i) r[i] = k * a[i];
  return reduce(std::move(r));
}

long long FgAbelianGroup::order_of(const Vec& a) const {
  for (std::size_t i = 0; i < free_rank; ++i)
    if (a[i] != 0) return 0;
  long long o = 1;
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    const long long d = torsion[i];
    const long long x = mod_reduce(a[free_rank + i], d);
    if (x != 0) o = std::lcm(o, d / std::gcd(x, d));
  }
  return o;
}

std::vector<FgAbelianGroup::Vec> FgAbelianGroup::all_elements() const {
  if (free_rank != 0)
    throw BudgetExceeded("cannot enumerate a group with free rank");
  std::vector<Vec> out{zero()};
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    std::vector<Vec> next;
    next.reserve(out.size() * torsion[i]);
    for (const Vec& v : out)
      for (long long x = 0; x < torsion[i]; ++x) {
        Vec w = v;
        w[i] = x;
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

std::string FgAbelianGroup::to_string() const {
  if (is_trivial()) return "0";
  std::string s;
  if (free_rank > 0) s += "Z^" + std::to_string(free_rank);
  for (long long d : torsion) {
    if (!s.empty()) s += " + ";
    s += "Z/" + std::to_string(d);
  }
  return s;
}

// --- Smith normal form --------------------------------------------------------

namespace {

using BigMat = std::vector<std::vector<cpp_int>>;

void row_swap(BigMat& m, std::size_t i, std::size_t j) { std::swap(m[i], m[j]); }
void col_swap(BigMat& m, std::size_t i, std::size_t j) {
  for (auto& row : m) std::swap(row[i], row[j]);
}
// row[i] += k * row[j]
void row_add(BigMat& m, std::size_t i, std::size_t j, const cpp_int& k) {
  for (std::size_t c = 0; c < m[i].size(); ++c) m[i][c] += k * m[j][c];
}
void col_add(BigMat& m, std::size_t i, std::size_t j, const cpp_int& k) {
  for (auto& row : m) row[i] += k * row[j];
}
void row_negate(BigMat& m, std::size_t i) {
  for (auto& x : m[i]) x = -x;
}

BigMat identity_mat(std::size_t n) {
  BigMat m(n, std::vector<cpp_int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

long long to_ll(const cpp_int& x) {
  if (x > std::numeric_limits<long long>::max() ||
      x < std::numeric_limits<long long>::min())
    throw BudgetExceeded("Smith normal form entry exceeds 64 bits");
  return static_cast<long long>(x);
}

}  // namespace

SmithResult smith_normal_form(const std::vector<std::vector<long long>>& a_in) {
  const std::size_t rows = a_in.size();
  const std::size_t cols = rows == 0 ? 0 : a_in[0].size();
  BigMat a(rows, std::vector<cpp_int>(cols));
  for (std::size_t i = 0; i < rows; ++i) {
    if (a_in[i].size() != cols) throw SizeMismatch("ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = a_in[i][j];
  }
  BigMat u = identity_mat(rows);  // accumulates row ops
  BigMat v = identity_mat(cols);  // accumulates column ops

  const std::size_t r = std::min(rows, cols);
  for (std::size_t t = 0; t < r; ++t) {
    // find a nonzero pivot in the remaining block, smallest |value| first
    while (true) {
      std::size_t pi = t, pj = t;
      cpp_int best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (a[i][j] == 0) continue;
          const cpp_int mag = abs(a[i][j]);
          if (best == 0 || mag < best) {
            best = mag;
            pi = i;
            pj = j;
          }
        }
      if (best == 0) break;  // block is zero, done
      if (pi != t) {
        row_swap(a, t, pi);
        row_swap(u, t, pi);
      }
      if (pj != t) {
        col_swap(a, t, pj);
        col_swap(v, t, pj);
      }
      if (a[t][t] < 0) {
        row_negate(a, t);
        row_negate(u, t);
      }
      // clear the pivot row and column
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const cpp_int q = a[i][t] / a[t][t];
        row_add(a, i, t, -q);
        row_add(u, i, t, -q);
        if (a[i][t] != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const cpp_int q = a[t][j] / a[t][t];
        col_add(a, j, t, -q);
        col_add(v, j, t, -q);
        if (a[t][j] != 0) dirty = true;
      }
      if (dirty) continue;  // remainders became new smaller pivots
      // pivot must divide every remaining entry; if not, mix the row in
      bool fixed = true;
      for (std::size_t i = t + 1; i < rows && fixed; ++i)
        for (std::size_t j = t + 1; j < cols && fixed; ++j)
          if (a[i][j] % a[t][t] != 0) {
            row_add(a, t, i, 1);
            row_add(u, t, i, 1);
            fixed = false;
          }
      if (fixed) break;
    }
  }

  SmithResult res;
  res.diag.resize(r);
  for (std::size_t t = 0; t < r; ++t) res.diag[t] = to_ll(a[t][t]);
  res.u.assign(rows, std::vector<long long>(rows));
  res.v.assign(cols, std::vector<long long>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < rows; ++j) res.u[i][j] = to_ll(u[i][j]);
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = 0; j < cols; ++j) res.v[i][j] = to_ll(v[i][j]);
  return res;
}

FgAbelianGroup canonical_abelian(std::size_t free_rank,
                                 const std::vector<long long>& cyclic_orders) {
  std::vector<long long> mods;
  for (long long d : cyclic_orders) {
    if (d < 0) d = -d;
    if (d == 0) {
      ++free_rank;  // a Z summand
    } else if (d > 1) {
      mods.push_back(d);
    }
  }
  if (mods.empty()) return FgAbelianGroup{free_rank, {}};
  // divisibility chain via SNF of the diagonal relation matrix
  std::vector<std::vector<long long>> diag(mods.size(),
                                           std::vector<long long>(mods.size(), 0));
  for (std::size_t i = 0; i < mods.size(); ++i) diag[i][i] = mods[i];
  auto snf = smith_normal_form(diag);
  std::vector<long long> torsion;
  for (long long d : snf.diag)
    if (d > 1) torsion.push_back(d);
  return FgAbelianGroup{free_rank, std::move(torsion)};
}

FgAbelianGroup tensor_product(const FgAbelianGroup& m, const FgAbelianGroup& n) {
  std::size_t free_rank = m.free_rank * n.free_rank;
  std::vector<long long> cyclic;
  // Z^r (x) Z/e contributes r copies of Z/e, and symmetrically
  for (long long e : n.torsion)
    for (std::size_t i = 0; i < m.free_rank; ++i) cyclic.push_back(e);
  for (long long d : m.torsion)
    for (std::size_t i = 0; i < n.free_rank; ++i) cyclic.push_back(d);
  for (long long d : m.torsion)
    for (long long e : n.torsion) cyclic.push_back(std::gcd(d, e));
  return canonical_abelian(free_rank, cyclic);
}

// --- abelianization -----------------------------------------------------------

Abelianization abelianization(const FiniteGroup& g) {
  QuotientResult q = quotient(g, commutator_subgroup(g));
  const FiniteGroup& ab = q.group;

  // polycyclic-style generator scan: relation k_i * e_i = rep(x_i^{k_i})
  std::vector<Elt> gens;
  std::vector<std::vector<long long>> rep(ab.size());
  std::vector<char> have(ab.size(), 0);
  rep[0] = {};
  have[0] = 1;
  std::vector<std::vector<long long>> relations;
  for (Elt x = 1; x < ab.size(); ++x) {
    if (have[x]) continue;
    const std::size_t gi = gens.size();
    gens.push_back(x);
    for (auto& r : rep) r.resize(gi + 1, 0);
    for (auto& r : relations) r.resize(gi + 1, 0);
    // smallest k >= 1 with x^k already reachable
    long long k = 1;
    Elt p = x;
    while (!have[p]) {
      p = ab.mul(p, x);
      ++k;
    }
    std::vector<long long> rel(gi + 1, 0);
    for (std::size_t c = 0; c < gi; ++c) rel[c] = -rep[p][c];
    rel[gi] = k;
    relations.push_back(rel);
    // fill in the new reachable elements x^j * h
    std::vector<Elt> old_elts;
    for (Elt y = 0; y < ab.size(); ++y)
      if (have[y]) old_elts.push_back(y);
    Elt xp = x;
    for (long long j = 1; j < k; ++j) {
      for (Elt y : old_elts) {
        const Elt z = ab.mul(xp, y);
        if (!have[z]) {
          have[z] = 1;
          rep[z] = rep[y];
          rep[z].resize(gi + 1, 0);
          rep[z][gi] = j;
        }
      }
      xp = ab.mul(xp, x);
    }
  }
  const std::size_t m = gens.size();
  for (auto& r : relations) r.resize(m, 0);
  for (auto& r : rep) r.resize(m, 0);

  FgAbelianGroup result;
  std::vector<FgAbelianGroup::Vec> coords(g.size());
  if (m == 0) {
    result = FgAbelianGroup{0, {}};
    for (Elt x = 0; x < g.size(); ++x) coords[x] = {};
    return Abelianization{result, std::move(coords), std::move(q)};
  }

  auto snf = smith_normal_form(relations);
  // new coordinates z = V^T * rep; summand i is Z/diag[i] (1 = drop)
  std::vector<long long> diag(m, 0);
  for (std::size_t i = 0; i < snf.diag.size() && i < m; ++i)
    diag[i] = snf.diag[i];
  std::vector<std::size_t> keep;
  std::vector<long long> torsion;
  for (std::size_t i = 0; i < m; ++i) {
    if (diag[i] == 1) continue;
    // a finite group has no free part; diag 0 cannot appear here
    keep.push_back(i);
    torsion.push_back(diag[i]);
  }
  result = FgAbelianGroup{0, torsion};
  for (Elt x = 0; x < g.size(); ++x) {
    const auto& r = rep[q.projection[x]];
    FgAbelianGroup::Vec v(keep.size(), 0);
    for (std::size_t t = 0; t < keep.size(); ++t) {
      long long acc = 0;
      for (std::size_t c = 0; c < m; ++c) acc += snf.v[c][keep[t]] * r[c];
      v[t] = acc;
    }
    coords[x] = result.reduce(std::move(v));
  }
  return Abelianization{result, std::move(coords), std::move(q)};
}

// --- pair tensor grid ----------------------------------------------------------

namespace {

std::vector<long long> generator_orders(const FgAbelianGroup& g) {
  std::vector<long long> o(g.free_rank, 0);
  for (long long d : g.torsion) o.push_back(d);
  return o;
}

}  // namespace

PairTensorGroup::PairTensorGroup(const FgAbelianGroup& m, const FgAbelianGroup& n) {
  const auto mo = generator_orders(m);
  const auto no = generator_orders(n);
  rows_ = mo.size();
  cols_ = no.size();
  orders_.resize(rows_ * cols_);
  for (std::size_t p = 0; p < rows_; ++p)
    for (std::size_t q = 0; q < cols_; ++q)
      orders_[p * cols_ + q] = std::gcd(mo[p], no[q]);  // gcd(x,0)=x, gcd(0,0)=0
}

bool PairTensorGroup::is_trivial() const {
  for (long long d : orders_)
    if (d != 1) return false;
  return true;
}

long long PairTensorGroup::order() const {
  long long o = 1;
  for (long long d : orders_) {
    if (d == 0) throw BudgetExceeded("tensor grid has an infinite summand");
    o *= d;
  }
  return o;
}

PairTensorGroup::Vec PairTensorGroup::reduce(Vec v) const {
  for (std::size_t i = 0; i < orders_.size(); ++i)
    v[i] = mod_reduce(v[i], orders_[i]);
  return v;
}

PairTensorGroup::Vec PairTensorGroup::add(const Vec& a, const Vec& b) const {
  Vec r(coords());
  for (std::size_t i = 0; i < coords(); ++i) r[i] = a[i] + b[i];
  return reduce(std::move(r));
}

PairTensorGroup::Vec PairTensorGroup::neg(const Vec& a) const {
  Vec r(coords());
  for (std::size_t i = 0; i < coords(); ++i) r[i] = -a[i];
  return reduce(std::move(r));
}

PairTensorGroup::Vec PairTensorGroup::scale(long long k, const Vec& a) const {
  Vec r(coords());
  for (std::size_t i = 0; i < coords(); ++i) r[i] = k * a[i];
  return reduce(std::move(r));
}

PairTensorGroup::Vec PairTensorGroup::pure(const FgAbelianGroup::Vec& x,
                                           const FgAbelianGroup::Vec& y) const {
  if (x.size() != rows_ || y.size() != cols_)
    throw SizeMismatch("pure tensor coordinate mismatch");
  Vec r(coords());
  for (std::size_t p = 0; p < rows_; ++p)
    for (std::size_t q = 0; q < cols_; ++q) r[p * cols_ + q] = x[p] * y[q];
  return reduce(std::move(r));
}

PairTensorGroup::Vec PairTensorGroup::swap_sides(const Vec& a) const {
  if (rows_ != cols_) throw SizeMismatch("swap requires a square tensor grid");
  Vec r(coords());
  for (std::size_t p = 0; p < rows_; ++p)
    for (std::size_t q = 0; q < cols_; ++q) r[q * cols_ + p] = a[p * cols_ + q];
  return reduce(std::move(r));
}

PairTensorGroup::Vec PairTensorGroup::map_through(
    const PairTensorGroup& target, const std::vector<FgAbelianGroup::Vec>& mimg,
    const std::vector<FgAbelianGroup::Vec>& nimg, const Vec& a) const {
  Vec r = target.zero();
  for (std::size_t p = 0; p < rows_; ++p)
    for (std::size_t q = 0; q < cols_; ++q) {
      const long long c = a[p * cols_ + q];
      if (c == 0) continue;
      r = target.add(r, target.scale(c, target.pure(mimg[p], nimg[q])));
    }
  return r;
}

std::vector<PairTensorGroup::Vec> PairTensorGroup::all_elements() const {
  const long long n = order();
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) out.push_back(element_at(i));
  return out;
}

long long PairTensorGroup::index_of(const Vec& a) const {
  long long idx = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (orders_[i] == 0) throw BudgetExceeded("indexing infinite tensor grid");
    idx = idx * orders_[i] + mod_reduce(a[i], orders_[i]);
  }
  return idx;
}

PairTensorGroup::Vec PairTensorGroup::element_at(long long idx) const {
  Vec v(coords(), 0);
  for (std::size_t i = coords(); i-- > 0;) {
    v[i] = idx % orders_[i];
    idx /= orders_[i];
  }
  return v;
}

FgAbelianGroup PairTensorGroup::canonical() const {
  return canonical_abelian(0, orders_);
}

}  // namespace verbal
