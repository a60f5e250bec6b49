#pragma once

#include "verbal/nfold.hpp"

namespace verbal {

/// Element (x, h) of the restricted verbal wreath product: a finitely
/// supported element of the H-indexed verbal power of G, plus an acting
/// element of H.
struct WreathElement {
  NfoldElt x;
  Elt h = 0;

  bool operator==(const WreathElement&) const = default;
  bool operator<(const WreathElement& o) const {
    if (h != o.h) return h < o.h;
    return x < o.x;
  }
};

/// G wr^w H: the H-indexed verbal power of G extended by H permuting the
/// coordinates by left translation. H is kept finite here, so restricted
/// support is automatic.
class VerbalWreathGroup {
 public:
  VerbalWreathGroup(const FiniteGroup& g, const FiniteGroup& h, const WordSet& w);

  const FiniteGroup& G() const { return base_.factor(); }
  const FiniteGroup& H() const { return *h_; }
  const NfoldProduct& base() const { return base_; }
  const WordSet& word_set() const { return base_.word_set(); }
  unsigned long long order() const { return base_.order() * h_->size(); }

  WreathElement one() const { return {base_.one(), 0}; }
  /// The copy of G at index 1_H.
  WreathElement embed_g(Elt g) const { return {base_.embed(0, g), 0}; }
  WreathElement embed_h(Elt h) const { return {base_.one(), h}; }
  WreathElement embed_base(const NfoldElt& x) const { return {x, 0}; }

  /// Coordinate permutation by left translation; tensor pairs reindex with
  /// the same relabeling.
  NfoldElt act(Elt h, const NfoldElt& x) const;

  WreathElement multiply(const WreathElement& a, const WreathElement& b) const;
  WreathElement inverse(const WreathElement& a) const;

  /// Support of the base part as a set of H elements.
  std::vector<Elt> support(const NfoldElt& x) const;

  /// All elements, identity first; order() must fit the cap.
  std::vector<WreathElement> elements(unsigned long long cap = 1u << 18) const;

 private:
  std::shared_ptr<const FiniteGroup> h_;
  NfoldProduct base_;
};

}  // namespace verbal
