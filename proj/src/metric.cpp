#include "verbal/metric.hpp"

#include <algorithm>

namespace verbal {

Perm Perm::identity(std::size_t n) {
  Perm p;
  p.img.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.img[i] = static_cast<Elt>(i);
  return p;
}

Perm Perm::operator*(const Perm& b) const {
  if (img.size() != b.img.size()) throw SizeMismatch("permutation degree mismatch");
  Perm r;
  r.img.resize(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) r.img[i] = img[b.img[i]];
  return r;
}

Perm Perm::inverse() const {
  Perm r;
  r.img.resize(img.size());
  for (std::size_t i = 0; i < img.size(); ++i) r.img[img[i]] = static_cast<Elt>(i);
  return r;
}

Elt Perm::inverse_cache(Elt y) const {
  for (std::size_t i = 0; i < img.size(); ++i)
    if (img[i] == y) return static_cast<Elt>(i);
  throw SizeMismatch("point outside permutation domain");
}

Rat hamming_dist(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) throw SizeMismatch("permutation degree mismatch");
  long long moved = 0;
  for (std::size_t i = 0; i < a.degree(); ++i)
    if (a.img[i] != b.img[i]) ++moved;
  return Rat(moved, static_cast<long long>(a.degree()));
}

MatFp MatFp::identity(std::size_t n, long long p) {
  MatFp m{n, p, std::vector<long long>(n * n, 0)};
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

MatFp MatFp::from_perm(const Perm& s, long long p) {
  MatFp m{s.degree(), p, std::vector<long long>(s.degree() * s.degree(), 0)};
  for (std::size_t j = 0; j < s.degree(); ++j) m.at(s.img[j], j) = 1;
  return m;
}

MatFp MatFp::operator*(const MatFp& o) const {
  if (n != o.n || p != o.p) throw SizeMismatch("matrix shape mismatch");
  MatFp r{n, p, std::vector<long long>(n * n, 0)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const long long x = at(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        r.at(i, j) = (r.at(i, j) + x * o.at(k, j)) % p;
    }
  return r;
}

std::size_t rank_fp(MatFp m) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.n && rank < m.n; ++col) {
    std::size_t pivot = rank;
    while (pivot < m.n && m.at(pivot, col) % m.p == 0) ++pivot;
    if (pivot == m.n) continue;
    for (std::size_t j = 0; j < m.n; ++j) std::swap(m.at(rank, j), m.at(pivot, j));
    // scale the pivot row to 1
    long long inv = 1;
    {
      // Fermat inverse; p is prime in this artifact
      long long base = ((m.at(rank, col) % m.p) + m.p) % m.p, e = m.p - 2;
      long long acc = 1;
      while (e > 0) {
        if (e & 1) acc = acc * base % m.p;
        base = base * base % m.p;
        e >>= 1;
      }
      inv = acc;
    }
    for (std::size_t j = 0; j < m.n; ++j)
      m.at(rank, j) = ((m.at(rank, j) * inv) % m.p + m.p) % m.p;
    for (std::size_t i = 0; i < m.n; ++i) {
      if (i == rank) continue;
      const long long f = ((m.at(i, col) % m.p) + m.p) % m.p;
      if (f == 0) continue;
      for (std::size_t j = 0; j < m.n; ++j)
        m.at(i, j) = ((m.at(i, j) - f * m.at(rank, j)) % m.p + m.p) % m.p;
    }
    ++rank;
  }
  return rank;
}

Rat rank_dist(const MatFp& m, const MatFp& x) {
  if (m.n != x.n || m.p != x.p) throw SizeMismatch("matrix shape mismatch");
  MatFp diff{m.n, m.p, std::vector<long long>(m.n * m.n, 0)};
  for (std::size_t i = 0; i < m.a.size(); ++i)
    diff.a[i] = (((m.a[i] - x.a[i]) % m.p) + m.p) % m.p;
  return Rat(static_cast<long long>(rank_fp(std::move(diff))),
             static_cast<long long>(m.n));
}

MatD MatD::identity(std::size_t n) {
  MatD m{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

MatD MatD::from_perm(const Perm& s) {
  MatD m{s.degree(), std::vector<double>(s.degree() * s.degree(), 0.0)};
  for (std::size_t j = 0; j < s.degree(); ++j) m.at(s.img[j], j) = 1.0;
  return m;
}

MatD MatD::operator*(const MatD& o) const {
  if (n != o.n) throw SizeMismatch("matrix shape mismatch");
  MatD r{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double x = at(i, k);
      if (x == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) r.at(i, j) += x * o.at(k, j);
    }
  return r;
}

MatD MatD::transpose() const {
  MatD r{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r.at(j, i) = at(i, j);
  return r;
}

double hs_dist(const MatD& u, const MatD& v) {
  if (u.n != v.n) throw SizeMismatch("matrix shape mismatch");
  double sum = 0;
  for (std::size_t i = 0; i < u.a.size(); ++i) {
    const double d = u.a[i] - v.a[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(u.n));
}

double normalized_trace(const MatD& u) {
  double t = 0;
  for (std::size_t i = 0; i < u.n; ++i) t += u.at(i, i);
  return t / static_cast<double>(u.n);
}

void check_unitary(const MatD& u, double tol) {
  const MatD prod = u * u.transpose();
  const MatD id = MatD::identity(u.n);
  for (std::size_t i = 0; i < prod.a.size(); ++i)
    if (std::abs(prod.a[i] - id.a[i]) > tol)
      throw NotUnitary("matrix is not unitary within tolerance");
}

WreathMetricElement wreath_metric_identity(std::size_t b, std::size_t inner_degree) {
  WreathMetricElement e;
  e.comps.assign(b, Perm::identity(inner_degree));
  e.tau = Perm::identity(b);
  return e;
}

WreathMetricElement wreath_metric_mul(const WreathMetricElement& x,
                                      const WreathMetricElement& y) {
  // (x, tau)(y, rho) = (b -> x_{rho(b)} y_b, tau rho): the convention under
  // which the displayed distance is bi-invariant and the amplification map
  // factorizes as Gamma(x,h) = Gamma(x,1) Gamma(1,h)
  WreathMetricElement r;
  const std::size_t nb = x.comps.size();
  if (nb != y.comps.size()) throw SizeMismatch("wreath base size mismatch");
  r.comps.resize(nb);
  for (std::size_t b = 0; b < nb; ++b)
    r.comps[b] = x.comps[y.tau.img[b]] * y.comps[b];
  r.tau = x.tau * y.tau;
  return r;
}

WreathMetricElement wreath_metric_inv(const WreathMetricElement& x) {
  // (x, tau)^-1 = (b -> x_{tau^-1(b)}^-1, tau^-1)
  WreathMetricElement r;
  const std::size_t nb = x.comps.size();
  r.comps.resize(nb);
  const Perm tinv = x.tau.inverse();
  for (std::size_t b = 0; b < nb; ++b) r.comps[b] = x.comps[tinv.img[b]].inverse();
  r.tau = tinv;
  return r;
}

Rat wreath_metric_dist(const WreathMetricElement& x, const WreathMetricElement& y) {
  const std::size_t nb = x.comps.size();
  if (nb != y.comps.size() || x.tau.degree() != y.tau.degree())
    throw SizeMismatch("wreath element shape mismatch");
  Rat d = hamming_dist(x.tau, y.tau);
  Rat inner_sum(0);
  for (std::size_t b = 0; b < nb; ++b) {
    if (x.tau.img[b] != y.tau.img[b]) continue;
    const Rat inner = hamming_dist(x.comps[b], y.comps[b]);
    if (inner > Rat(1)) throw DiameterViolation("inner metric exceeds diameter 1");
    inner_sum += inner;
  }
  return d + inner_sum / Rat(static_cast<long long>(nb));
}

}  // namespace verbal
