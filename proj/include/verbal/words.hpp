#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "verbal/group.hpp"

namespace verbal {

/// Freely reduced word in letters x1, x2, ... stored as syllables
/// (letter index >= 1, nonzero exponent) with no adjacent equal letters.
class FreeWord {
 public:
  struct Syllable {
    std::uint32_t letter;  // 1-based
    long long exponent;
    bool operator==(const Syllable&) const = default;
  };

  FreeWord() = default;
  /// Reduces on construction.
  explicit FreeWord(std::vector<Syllable> syllables);

  static FreeWord letter(std::uint32_t i, long long e = 1);
  static FreeWord empty() { return FreeWord(); }

  const std::vector<Syllable>& syllables() const { return syllables_; }
  bool is_empty() const { return syllables_.empty(); }
  /// Highest letter index used (0 for the empty word).
  std::uint32_t arity() const;
  /// Total letter count, sum of |exponent|.
  std::size_t length() const;

  FreeWord operator*(const FreeWord& other) const;
  FreeWord inverse() const;
  /// [u, v] = u v u^-1 v^-1.
  static FreeWord commutator(const FreeWord& u, const FreeWord& v);
  /// Renames letter i to i + shift.
  FreeWord shift_letters(std::uint32_t shift) const;

  bool operator==(const FreeWord&) const = default;

  std::string to_string() const;
  /// Parses "x2 x1 x2^-1 x1^-1".
  static FreeWord parse(const std::string& text);

 private:
  std::vector<Syllable> syllables_;
};

/// The commutator word n_k: n_1 = [x2,x1], n_k = [x_{k+1}, n_{k-1}];
/// its verbal subgroup is the (k+1)-st lower central term.
FreeWord word_nilpotent(unsigned k);
/// The derived word s_k on 2^k letters: s_1 = [x1,x2],
/// s_k = [s_{k-1}(x_1..), s_{k-1}(x_{2^{k-1}+1}..)].
FreeWord word_solvable(unsigned k, unsigned arity_cap = 64);
/// x1^k.
FreeWord word_power(unsigned k);

/// Evaluates w at a tuple of group elements; tuple length must equal
/// the word's arity.
Elt evaluate(const FreeWord& w, const FiniteGroup& g, const std::vector<Elt>& tuple);

/// Word-set descriptor: nil:K | sol:K | burnside:K | free | explicit list.
struct WordSet {
  enum class Kind { nilpotent, solvable, burnside, free_product, explicit_list };
  Kind kind = Kind::free_product;
  unsigned k = 0;
  std::vector<FreeWord> words;  // explicit_list only

  static WordSet nilpotent(unsigned k);
  static WordSet solvable(unsigned k);
  static WordSet burnside(unsigned k);
  static WordSet free_product();
  static WordSet explicit_words(std::vector<FreeWord> ws);

  /// The actual words of the set (one word for the named families).
  std::vector<FreeWord> members() const;
  std::string to_string() const;
  /// Parses "nil:K | sol:K | burnside:K | free".
  static WordSet parse(const std::string& descriptor);
  bool operator==(const WordSet&) const = default;
};

/// W(G) by brute evaluation of every member word on every tuple; the
/// enumeration budget bounds |G|^arity.
Subgroup verbal_subgroup_brute(const FiniteGroup& g, const WordSet& w,
                               unsigned long long budget = 50'000'000ULL);

/// W(G) through the specialized series routines where the family admits one,
/// falling back to brute enumeration for explicit lists.
Subgroup verbal_subgroup(const FiniteGroup& g, const WordSet& w,
                         unsigned long long budget = 50'000'000ULL);

/// gamma_{k+1}(G): the verbal subgroup of n_k.
Subgroup lower_central_series(const FiniteGroup& g, unsigned k);
/// G^{(k)}: the verbal subgroup of s_k.
Subgroup derived_series(const FiniteGroup& g, unsigned k);
/// Subgroup generated by k-th powers.
Subgroup power_subgroup(const FiniteGroup& g, unsigned k);

/// Nilpotency class (throws CheckFailed if not nilpotent), via the series.
unsigned nilpotency_class(const FiniteGroup& g);

}  // namespace verbal
