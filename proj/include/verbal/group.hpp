#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "verbal/errors.hpp"

namespace verbal {

using Elt = std::uint32_t;

/// Multiplication-table group on indices 0..n-1 with identity fixed at 0.
/// Immutable after construction; all operations are pure.
class FiniteGroup {
 public:
  /// Validates identity, inverses and (for n <= assoc_check_limit) full
  /// associativity. Throws MalformedTable on any failure.
  FiniteGroup(std::vector<std::vector<Elt>> table,
              std::vector<std::string> labels = {});

  std::size_t size() const { return n_; }
  Elt id() const { return 0; }
  Elt mul(Elt x, Elt y) const { return table_[x * n_ + y]; }
  Elt inv(Elt x) const { return inv_[x]; }
  Elt conj(Elt g, Elt x) const { return mul(mul(g, x), inv(g)); }
  Elt commutator(Elt x, Elt y) const {
    return mul(mul(x, y), mul(inv(x), inv(y)));
  }
  Elt pow(Elt x, long long e) const;
  /// Multiplicative order of x.
  std::size_t order_of(Elt x) const;
  /// Exponent of the group (lcm of element orders).
  std::size_t exponent() const;
  bool is_abelian() const;

  const std::string& label(Elt x) const { return labels_[x]; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Full associativity scan limit; groups up to this size are verified
  /// exhaustively at construction, larger ones by sampling.
  static constexpr std::size_t assoc_check_limit = 512;

 private:
  std::size_t n_;
  std::vector<Elt> table_;  // flattened n x n
  std::vector<Elt> inv_;
  std::vector<std::string> labels_;
};

/// Subgroup as a sorted member list plus a membership mask.
struct Subgroup {
  const FiniteGroup* parent = nullptr;
  std::vector<Elt> members;       // sorted, contains 0
  std::vector<char> mask;         // size parent->size()

  std::size_t size() const { return members.size(); }
  bool contains(Elt x) const { return mask[x] != 0; }
  bool operator==(const Subgroup& other) const {
    return parent == other.parent && members == other.members;
  }
};

/// Homomorphism given by its full element-wise image table.
struct GroupHom {
  const FiniteGroup* source = nullptr;
  const FiniteGroup* target = nullptr;
  std::vector<Elt> image;

  Elt operator()(Elt x) const { return image[x]; }
  bool is_valid() const;
  /// Sorted list of kernel elements.
  std::vector<Elt> kernel() const;
};

/// Enumeration cap for table groups; make_group and the congruence engine
/// refuse rather than thrash past it. Overridable via VERBALFORGE_CAP.
std::size_t default_cap();

// --- constructors -----------------------------------------------------------

FiniteGroup cyclic_group(std::size_t n);
FiniteGroup symmetric_group(std::size_t n);
FiniteGroup dihedral_group(std::size_t n);
FiniteGroup klein_four_group();
/// Builds from a JSON file {"n": int, "table": [[int]]}; identity must be 0.
FiniteGroup group_from_table_file(const std::string& path);
/// Parses the descriptor grammar: cyclic:N | sym:N | dihedral:N | klein4 | table:PATH.
FiniteGroup make_group(const std::string& descriptor);

/// Direct product A x B with lexicographic element indexing (a*|B|+b).
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
FiniteGroup direct_product(const std::vector<const FiniteGroup*>& factors);

// --- subgroup machinery ------------------------------------------------------

/// Smallest subgroup containing S: breadth-first closure under mul and inv.
Subgroup subgroup_generated(const FiniteGroup& g, const std::vector<Elt>& gens);
/// Smallest normal subgroup containing S.
Subgroup normal_closure(const FiniteGroup& g, const std::vector<Elt>& gens);
bool is_normal(const FiniteGroup& g, const Subgroup& h);
/// Commutator subgroup [G,G].
Subgroup commutator_subgroup(const FiniteGroup& g);
/// Trivial subgroup {id}.
Subgroup trivial_subgroup(const FiniteGroup& g);
Subgroup full_subgroup(const FiniteGroup& g);

/// Coset group plus the canonical projection, as a value pair; build a
/// GroupHom from it once both groups have stable addresses.
struct QuotientResult {
  FiniteGroup group;
  std::vector<Elt> projection;  // source element -> coset index
};

/// Coset group G/N plus the canonical projection. Throws NotNormal.
QuotientResult quotient(const FiniteGroup& g, const Subgroup& n);

/// g -> left-translation permutation (as images vector); an injective
/// homomorphism whose non-identity images are fixed-point-free.
std::vector<std::vector<Elt>> regular_representation(const FiniteGroup& g);

/// A small generating set found greedily (shortest first).
std::vector<Elt> small_generating_set(const FiniteGroup& g);

/// All endomorphisms of g, enumerated via generator images. Intended for
/// test groups with |G| <= 24.
std::vector<GroupHom> all_endomorphisms(const FiniteGroup& g);

/// Builds the hom determined by images of the given generators, or nullopt
/// if no such homomorphism exists.
std::optional<GroupHom> hom_from_generator_images(const FiniteGroup& src,
                                                  const FiniteGroup& tgt,
                                                  const std::vector<Elt>& gens,
                                                  const std::vector<Elt>& images);

}  // namespace verbal
