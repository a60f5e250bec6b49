#pragma once

#include <optional>
#include <memory>
#include <vector>

#include "verbal/abelian.hpp"
#include "verbal/group.hpp"
#include "verbal/words.hpp"

namespace verbal {

/// Element of an n-fold verbal power: one factor component per index plus
/// one tensor component per index pair i < j. The tensor components are
/// empty vectors when the word set collapses the cartesian part (nil:1,
/// sol:1, burnside:2).
struct NfoldElt {
  std::vector<Elt> comp;
  std::vector<PairTensorGroup::Vec> pair_t;  // lex over pairs i < j

  bool operator==(const NfoldElt&) const = default;
  bool operator<(const NfoldElt& o) const {
    if (comp != o.comp) return comp < o.comp;
    return pair_t < o.pair_t;
  }
};

/// The verbal power of one group G over an ordered finite index set,
/// with the class-2 tensor law extended pairwise (the nil:1 instance is
/// the plain direct sum).
class NfoldProduct {
 public:
  NfoldProduct(const FiniteGroup& g, std::size_t indices, const WordSet& w);

  const FiniteGroup& factor() const { return *g_; }
  const Abelianization& factor_ab() const { return *ab_; }
  const PairTensorGroup& tensor() const { return tensor_; }
  const WordSet& word_set() const { return w_; }
  std::size_t indices() const { return m_; }
  bool has_tensor_part() const { return with_tensor_; }
  std::size_t pair_count() const { return m_ * (m_ - 1) / 2; }
  std::size_t pair_index(std::size_t i, std::size_t j) const;

  unsigned long long order() const;

  NfoldElt one() const;
  NfoldElt embed(std::size_t index, Elt g) const;
  NfoldElt multiply(const NfoldElt& x, const NfoldElt& y) const;
  NfoldElt inverse(const NfoldElt& x) const;
  /// Indices with a nontrivial factor component plus both ends of any
  /// nontrivial tensor pair.
  std::vector<std::size_t> support(const NfoldElt& x) const;

  /// Pushes x through an index map into another power of the same factor
  /// and word set: component i lands at index_map[i], tensor pairs are
  /// reindexed (transposed when the map reverses the pair order). The map
  /// must be injective on the support of x, and every supported index must
  /// be mapped; otherwise nullopt.
  std::optional<NfoldElt> push_forward(const NfoldProduct& target,
                                       const std::vector<std::optional<std::size_t>>& index_map,
                                       const NfoldElt& x) const;

  /// All elements, identity first; order() must be affordable.
  std::vector<NfoldElt> elements(unsigned long long cap = 1u << 20) const;

 private:
  std::shared_ptr<const FiniteGroup> g_;
  std::shared_ptr<const Abelianization> ab_;
  PairTensorGroup tensor_;
  WordSet w_;
  std::size_t m_;
  bool with_tensor_;
};

/// The inclusion of the power over a subset of indices:
/// index_map[i] = position of subset index i inside the larger set.
std::optional<NfoldElt> include_subproduct(const NfoldProduct& src,
                                           const NfoldProduct& dst,
                                           const std::vector<std::size_t>& index_map,
                                           const NfoldElt& x);

}  // namespace verbal
