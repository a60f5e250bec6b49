#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "verbal/abelian.hpp"
#include "verbal/group.hpp"
#include "verbal/words.hpp"

namespace verbal {

/// Sparse coordinates over the basis e_{alpha,beta}, alpha in A\{1},
/// beta in B\{1}; zero entries are never stored.
using MetabVec = std::map<std::pair<Elt, Elt>, long long>;

/// Engine-specific carrier for the cartesian part of a normal form:
/// trivial / tensor-grid vector / free-abelian lattice / index into the
/// enumerated cartesian subgroup.
using CartesianPart =
    std::variant<std::monostate, PairTensorGroup::Vec, MetabVec, Elt>;

/// The unique writing a * b * u of an element of a binary verbal product.
struct NormalForm {
  Elt a = 0;
  Elt b = 0;
  CartesianPart u;

  bool operator==(const NormalForm&) const = default;
  bool operator<(const NormalForm& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    return u < o.u;
  }
};

enum class EngineKind { direct_sum, class2_tensor, metabelian_lattice, generic_finite };
std::string to_string(EngineKind e);

struct Finiteness {
  enum class Tag { finite, infinite, unresolved } tag = Tag::unresolved;
  unsigned long long order = 0;  // finite only
  std::size_t cap = 0;           // unresolved only
  bool is_finite() const { return tag == Tag::finite; }
  std::string to_string() const;
};

/// Result of the congruence-closure enumeration: the product as a table
/// group with a certified normal-form section.
struct GenericEnumeration {
  FiniteGroup group;                // identity at index 0
  std::vector<Elt> a_embed;         // A -> group
  std::vector<Elt> b_embed;         // B -> group
  std::vector<Elt> a_part, b_part;  // projections per element
  std::vector<Elt> cart_members;    // sorted: elements with trivial projections
  std::vector<Elt> u_index;         // per element: position of (ab)^-1 g in cart_members
  unsigned long long clamp_order;   // |(A*B)/W(A*B)|
  std::size_t classes_explored;     // peak congruence classes
};

/// A ∗ʷ B behind a pluggable engine. Immutable; cheap to copy.
class BinaryVerbalProduct {
 public:
  enum class Choice { automatic, direct_sum, class2_tensor, metabelian_lattice, generic_finite };
  static Choice parse_choice(const std::string& name);

  /// Builds with the requested engine (or picks one). Throws EngineMismatch
  /// when no engine applies; generic enumeration failure is not an error,
  /// it yields finiteness() == unresolved and arithmetic is refused.
  static BinaryVerbalProduct build(const FiniteGroup& a, const FiniteGroup& b,
                                   const WordSet& w, Choice choice = Choice::automatic,
                                   std::size_t generic_cap = 0);

  EngineKind engine() const { return engine_; }
  const WordSet& word_set() const { return w_; }
  const FiniteGroup& A() const { return *a_; }
  const FiniteGroup& B() const { return *b_; }
  const Abelianization& ab_a() const { return *aba_; }
  const Abelianization& ab_b() const { return *abb_; }
  const PairTensorGroup& tensor() const;        // class2 only
  const GenericEnumeration& enumeration() const;  // generic only

  Finiteness finiteness() const;
  /// Lattice rank (|A|-1)(|B|-1) of the metabelian engine; 0 elsewhere.
  std::size_t lattice_rank() const;
  std::string cartesian_description() const;

  NormalForm one() const;
  NormalForm multiply(const NormalForm& x, const NormalForm& y) const;
  NormalForm inverse(const NormalForm& x) const;
  NormalForm embed_a(Elt a) const;
  NormalForm embed_b(Elt b) const;
  /// Commutator [embed_a(a), embed_b(b)].
  NormalForm cross_commutator(Elt a, Elt b) const;
  bool is_identity(const NormalForm& x) const { return x == one(); }
  /// Additive/multiplicative order of x (0 = infinite).
  long long order_of(const NormalForm& x) const;

  std::string format(const NormalForm& x) const;

 private:
  EngineKind engine_ = EngineKind::direct_sum;
  WordSet w_;
  std::shared_ptr<const FiniteGroup> a_, b_;
  std::shared_ptr<const Abelianization> aba_, abb_;
  std::shared_ptr<const PairTensorGroup> tensor_;
  std::shared_ptr<const GenericEnumeration> gen_;
  std::size_t gen_cap_ = 0;

  CartesianPart zero_u() const;
  MetabVec metab_right_conj_a(Elt a, const MetabVec& u) const;
  MetabVec metab_right_conj_b(Elt b, const MetabVec& u) const;
};

/// Finite products as plain table groups, with the normal-form bijection.
struct MaterializedProduct {
  FiniteGroup group;
  std::vector<NormalForm> forms;       // index -> form
  std::map<NormalForm, Elt> index_of;  // form -> index
};
MaterializedProduct materialize(const BinaryVerbalProduct& p);

/// Pushes a normal form through factor homomorphisms (projections fa, fb)
/// into a product over the image factors. Supported for the direct-sum,
/// class2 and metabelian engines.
NormalForm map_through_factor_homs(const BinaryVerbalProduct& src,
                                   const BinaryVerbalProduct& dst,
                                   const std::vector<Elt>& fa,
                                   const std::vector<Elt>& fb,
                                   const NormalForm& x);

/// Report for the verbal-subgroup isomorphism W(A) x W(B) = W(P) and the
/// companion commutation and trivial-intersection facts.
struct PsiReport {
  bool ok = false;
  std::size_t wa_order = 0, wb_order = 0, wp_order = 0;
  bool psi_isomorphism = false;
  bool commute_lemma = false;
  bool trivial_intersection = false;
  std::string witness;  // first failure, empty when ok
};
PsiReport verify_psi_isomorphism(const BinaryVerbalProduct& p,
                                 unsigned long long budget = 50'000'000ULL);

/// (A/M) ∗ʷ (B/N) together with the induced surjection from p's
/// materialization; kernel is checked against the normal closure of the
/// embedded M and N when p is finite.
struct QuotientByMN {
  BinaryVerbalProduct product;
  MaterializedProduct src;     // p materialized
  MaterializedProduct dst;     // quotient product materialized
  std::vector<Elt> phi;        // src.group -> dst.group element map
  bool kernel_matches_closure = false;
};
QuotientByMN quotient_by_mn(const BinaryVerbalProduct& p, const Subgroup& m,
                            const Subgroup& n);

}  // namespace verbal
