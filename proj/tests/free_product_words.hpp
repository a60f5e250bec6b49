#pragma once

// Test-only model of the free product A*B as reduced alternating words,
// used as an independent oracle for the product engines.

#include <vector>

#include "verbal/group.hpp"
#include "verbal/product.hpp"

namespace oracle {

using verbal::Elt;
using verbal::FiniteGroup;

struct FPLetter {
  bool side_b;
  Elt elt;  // nontrivial
  bool operator==(const FPLetter&) const = default;
};

/// Reduced word in A*B; empty = identity.
struct FPWord {
  std::vector<FPLetter> letters;
  bool operator==(const FPWord&) const = default;
};

inline FPWord fp_letter(bool side_b, Elt x) {
  if (x == 0) return {};
  return {{{side_b, x}}};
}

inline FPWord fp_mul(const FiniteGroup& a, const FiniteGroup& b, FPWord x,
                     const FPWord& y) {
  for (const FPLetter& l : y.letters) {
    if (!x.letters.empty() && x.letters.back().side_b == l.side_b) {
      const FiniteGroup& f = l.side_b ? b : a;
      const Elt merged = f.mul(x.letters.back().elt, l.elt);
      x.letters.pop_back();
      if (merged != 0) x.letters.push_back({l.side_b, merged});
    } else {
      x.letters.push_back(l);
    }
  }
  return x;
}

inline FPWord fp_inv(const FiniteGroup& a, const FiniteGroup& b, const FPWord& x) {
  FPWord r;
  for (auto it = x.letters.rbegin(); it != x.letters.rend(); ++it) {
    const FiniteGroup& f = it->side_b ? b : a;
    r.letters.push_back({it->side_b, f.inv(it->elt)});
  }
  return r;
}

inline FPWord fp_comm(const FiniteGroup& a, const FiniteGroup& b, const FPWord& x,
                      const FPWord& y) {
  return fp_mul(a, b, fp_mul(a, b, fp_mul(a, b, x, y), fp_inv(a, b, x)),
                fp_inv(a, b, y));
}

/// Projections to the factors.
inline Elt fp_proj_a(const FiniteGroup& a, const FPWord& w) {
  Elt acc = 0;
  for (const FPLetter& l : w.letters)
    if (!l.side_b) acc = a.mul(acc, l.elt);
  return acc;
}
inline Elt fp_proj_b(const FiniteGroup& b, const FPWord& w) {
  Elt acc = 0;
  for (const FPLetter& l : w.letters)
    if (l.side_b) acc = b.mul(acc, l.elt);
  return acc;
}

/// Normal form of w in the metabelian product of abelian A and B, computed
/// by Reidemeister-Schreier rewriting for the kernel of A*B -> A x B with
/// transversal {a b}: the Schreier generator at state (s,t) for an A-letter
/// x is (s t x t^-1 x^-1 s^-1) = [s,t][sx,t]^-1, contributing coordinates
/// e_{s,t} - e_{sx,t}; B-letters emit nothing. Writing w = a b u with
/// u = (ab)^-1 w in the kernel gives the engine-independent coordinates.
inline verbal::NormalForm fp_metab_normal_form(const FiniteGroup& a,
                                               const FiniteGroup& b,
                                               const FPWord& w) {
  const Elt pa = fp_proj_a(a, w);
  const Elt pb = fp_proj_b(b, w);
  const FPWord u = fp_mul(
      a, b, fp_mul(a, b, fp_inv(a, b, fp_letter(true, pb)),
                   fp_inv(a, b, fp_letter(false, pa))),
      w);
  verbal::MetabVec coords;
  auto bump = [&](Elt alpha, Elt beta, long long c) {
    if (alpha == 0 || beta == 0) return;
    auto key = std::make_pair(alpha, beta);
    coords[key] += c;
    if (coords[key] == 0) coords.erase(key);
  };
  Elt s = 0, t = 0;
  for (const FPLetter& l : u.letters) {
    if (l.side_b) {
      t = b.mul(t, l.elt);
    } else {
      bump(s, t, +1);
      bump(a.mul(s, l.elt), t, -1);
      s = a.mul(s, l.elt);
    }
  }
  // u lies in the kernel, so the scan returns to the identity coset
  REQUIRE(s == 0);
  REQUIRE(t == 0);
  return verbal::NormalForm{pa, pb, std::move(coords)};
}

/// Expands a normal form back into a word: a * b * prod [alpha,beta]^c.
inline FPWord fp_expand(const FiniteGroup& a, const FiniteGroup& b,
                        const verbal::NormalForm& nf) {
  FPWord w = fp_mul(a, b, fp_letter(false, nf.a), fp_letter(true, nf.b));
  for (const auto& [key, c] : std::get<verbal::MetabVec>(nf.u)) {
    const FPWord base =
        fp_comm(a, b, fp_letter(false, key.first), fp_letter(true, key.second));
    const FPWord piece = c > 0 ? base : fp_inv(a, b, base);
    for (long long i = 0; i < (c > 0 ? c : -c); ++i) w = fp_mul(a, b, w, piece);
  }
  return w;
}

}  // namespace oracle
