#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "verbal/group.hpp"
#include "verbal/rational.hpp"

namespace verbal {

// --- permutations with the normalized Hamming metric ---------------------------

struct Perm {
  std::vector<Elt> img;

  static Perm identity(std::size_t n);
  std::size_t degree() const { return img.size(); }
  Elt operator()(Elt x) const { return img[x]; }
  /// Function composition: (a*b)(x) = a(b(x)).
  Perm operator*(const Perm& b) const;
  Perm inverse() const;
  Elt preimage(Elt y) const { return inverse_cache(y); }
  bool operator==(const Perm&) const = default;
  bool operator<(const Perm& o) const { return img < o.img; }

 private:
  Elt inverse_cache(Elt y) const;
};

/// (1/n) #{x : a(x) != b(x)}, exact.
Rat hamming_dist(const Perm& a, const Perm& b);

// --- invertible matrices over F_p with the normalized rank metric ---------------

struct MatFp {
  std::size_t n = 0;
  long long p = 2;
  std::vector<long long> a;  // row-major, reduced mod p

  static MatFp identity(std::size_t n, long long p);
  static MatFp from_perm(const Perm& s, long long p);
  long long& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  long long at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  MatFp operator*(const MatFp& o) const;
  bool operator==(const MatFp&) const = default;
};

std::size_t rank_fp(MatFp m);
/// (1/n) rank(M - N), exact.
Rat rank_dist(const MatFp& m, const MatFp& x);

// --- real matrices with the normalized Hilbert-Schmidt metric -------------------

struct MatD {
  std::size_t n = 0;
  std::vector<double> a;

  static MatD identity(std::size_t n);
  static MatD from_perm(const Perm& s);
  double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
  MatD operator*(const MatD& o) const;
  MatD transpose() const;
};

/// ||U - V||_2 with tr normalized by the dimension.
double hs_dist(const MatD& u, const MatD& v);
/// tr(U)/n.
double normalized_trace(const MatD& u);
/// Throws NotUnitary unless U U^T = I within tol.
void check_unitary(const MatD& u, double tol = 1e-9);

// --- wreath metric over a permutational wreath product --------------------------

/// Element ((x_b)_{b in B}, tau) of A wr_B Sym(B) with A a finite group of
/// permutations carrying the Hamming metric (diameter 1).
struct WreathMetricElement {
  std::vector<Perm> comps;
  Perm tau;
  bool operator==(const WreathMetricElement&) const = default;
};

WreathMetricElement wreath_metric_identity(std::size_t b, std::size_t inner_degree);
WreathMetricElement wreath_metric_mul(const WreathMetricElement& x,
                                      const WreathMetricElement& y);
WreathMetricElement wreath_metric_inv(const WreathMetricElement& x);
/// d~((x,tau),(y,rho)) = d_Hamm(tau,rho) + (1/|B|) sum_{rho(b)=tau(b)} d(x_b,y_b).
Rat wreath_metric_dist(const WreathMetricElement& x, const WreathMetricElement& y);

// --- metric carriers -------------------------------------------------------------

struct SymHamming {
  std::size_t n;
  using Value = Perm;
  Value one() const { return Perm::identity(n); }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Rat dist(const Value& a, const Value& b) const { return hamming_dist(a, b); }
};

struct GLRank {
  std::size_t n;
  long long p;
  using Value = MatFp;
  Value one() const { return MatFp::identity(n, p); }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Rat dist(const Value& a, const Value& b) const { return rank_dist(a, b); }
};

struct UnitaryHS {
  std::size_t n;
  double tol = 1e-9;
  using Value = MatD;
  Value one() const { return MatD::identity(n); }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  double dist(const Value& a, const Value& b) const { return hs_dist(a, b); }
  double trace(const Value& a) const { return normalized_trace(a); }
};

struct WreathHamming {
  std::size_t b;
  std::size_t inner_degree;
  using Value = WreathMetricElement;
  Value one() const { return wreath_metric_identity(b, inner_degree); }
  Value mul(const Value& x, const Value& y) const { return wreath_metric_mul(x, y); }
  Rat dist(const Value& x, const Value& y) const { return wreath_metric_dist(x, y); }
};

// --- defect measurement -----------------------------------------------------------

/// Measured approximation defects over a finite window. Exact carriers fill
/// the rational fields; the Hilbert-Schmidt carrier fills the float mirrors.
struct DefectReport {
  std::string flavor;
  std::size_t window_size = 0;
  std::optional<Rat> mult_defect;
  std::optional<Rat> free_defect;
  std::optional<double> mult_defect_hs;
  std::optional<double> free_defect_hs;
  std::optional<double> trace_max;
  std::string mult_witness, free_witness;
};

/// Window map backed by an explicit table; lookups outside the window
/// throw WindowNotClosed.
template <class Elem, class Value>
struct ApproxTable {
  std::map<Elem, Value> table;
  const Value& operator()(const Elem& g) const {
    auto it = table.find(g);
    if (it == table.end()) throw WindowNotClosed("element outside the window");
    return it->second;
  }
};

/// Exact-metric defect measurement: the map must be defined on every
/// product of window elements.
template <class Elem, class Carrier, class MulFn, class MapFn, class NameFn>
DefectReport measure_defects(const std::string& flavor,
                             const std::vector<Elem>& window, const Elem& identity,
                             MulFn&& src_mul, MapFn&& map, const Carrier& target,
                             NameFn&& name) {
  DefectReport rep;
  rep.flavor = flavor;
  rep.window_size = window.size();
  using D = decltype(target.dist(target.one(), target.one()));
  constexpr bool exact = std::is_same_v<D, Rat>;
  D mult{};
  bool have_free = false;
  D free_val{};
  for (const Elem& g : window) {
    const auto ig = map(g);
    for (const Elem& gp : window) {
      const D d = target.dist(target.mul(ig, map(gp)), map(src_mul(g, gp)));
      if (d > mult) {
        mult = d;
        rep.mult_witness = name(g) + " , " + name(gp);
      }
    }
    if (!(g == identity)) {
      const D d = target.dist(ig, target.one());
      if (!have_free || d < free_val) {
        free_val = d;
        have_free = true;
        rep.free_witness = name(g);
      }
    }
  }
  if constexpr (exact) {
    rep.mult_defect = mult;
    if (have_free) rep.free_defect = free_val;
  } else {
    rep.mult_defect_hs = mult;
    if (have_free) rep.free_defect_hs = free_val;
  }
  if constexpr (std::is_same_v<Carrier, UnitaryHS>) {
    double tmax = 0;
    for (const Elem& g : window) {
      if (g == identity) continue;
      tmax = std::max(tmax, std::abs(target.trace(map(g))));
    }
    rep.trace_max = tmax;
  }
  return rep;
}

}  // namespace verbal
