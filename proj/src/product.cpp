#include "verbal/product.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "verbal/generic_engine.hpp"

namespace verbal {

std::string to_string(EngineKind e) {
  switch (e) {
    case EngineKind::direct_sum: return "direct-sum";
    case EngineKind::class2_tensor: return "class2-tensor";
    case EngineKind::metabelian_lattice: return "metabelian-lattice";
    case EngineKind::generic_finite: return "generic-finite";
  }
  return "?";
}

std::string Finiteness::to_string() const {
  switch (tag) {
    case Tag::finite: return "Finite(" + std::to_string(order) + ")";
    case Tag::infinite: return "Infinite";
    case Tag::unresolved: return "Unresolved(cap=" + std::to_string(cap) + ")";
  }
  return "?";
}

BinaryVerbalProduct::Choice BinaryVerbalProduct::parse_choice(const std::string& s) {
  if (s == "auto") return Choice::automatic;
  if (s == "direct") return Choice::direct_sum;
  if (s == "class2") return Choice::class2_tensor;
  if (s == "metab") return Choice::metabelian_lattice;
  if (s == "generic") return Choice::generic_finite;
  throw ParseError("unknown engine: " + s);
}

namespace {

bool collapses_to_direct_sum(const WordSet& w) {
  // n1 and s1 are the commutator word; x^2 products also collapse because
  // [a,b] = (ab)^2 (b^-1)^2 (b a^-1 b^-1)^2 lies in the squares subgroup.
  return (w.kind == WordSet::Kind::nilpotent && w.k == 1) ||
         (w.kind == WordSet::Kind::solvable && w.k == 1) ||
         (w.kind == WordSet::Kind::burnside && w.k == 2);
}

}  // namespace

BinaryVerbalProduct BinaryVerbalProduct::build(const FiniteGroup& a,
                                               const FiniteGroup& b,
                                               const WordSet& w, Choice choice,
                                               std::size_t generic_cap) {
  BinaryVerbalProduct p;
  p.w_ = w;
  p.a_ = std::make_shared<FiniteGroup>(a);
  p.b_ = std::make_shared<FiniteGroup>(b);
  p.aba_ = std::make_shared<Abelianization>(abelianization(a));
  p.abb_ = std::make_shared<Abelianization>(abelianization(b));
  if (generic_cap == 0) {
    // VERBALFORGE_CAP overrides the enumeration cap
    const char* env = std::getenv("VERBALFORGE_CAP");
    generic_cap = env && std::atol(env) > 0
                      ? static_cast<std::size_t>(std::atol(env))
                      : 20000;
  }
  p.gen_cap_ = generic_cap;

  auto pick = [&]() -> Choice {
    if (collapses_to_direct_sum(w)) return Choice::direct_sum;
    if (w.kind == WordSet::Kind::nilpotent && w.k == 2) return Choice::class2_tensor;
    if (w.kind == WordSet::Kind::solvable && w.k == 2) {
      if (a.is_abelian() && b.is_abelian()) return Choice::metabelian_lattice;
      throw EngineMismatch("sol:2 with non-abelian factors has no engine");
    }
    if (w.kind == WordSet::Kind::nilpotent && w.k >= 3) {
      if (a.size() <= 4 && b.size() <= 4 && a.is_abelian() && b.is_abelian())
        return Choice::generic_finite;
      throw EngineMismatch("nil:k for k >= 3 is served only at tiny scale "
                           "(abelian factors of order <= 4)");
    }
    if (w.kind == WordSet::Kind::burnside && w.k == 3) return Choice::generic_finite;
    if (w.kind == WordSet::Kind::burnside)
      throw EngineMismatch("burnside:k is construction-refused for k not in {2,3}");
    if (w.kind == WordSet::Kind::solvable)
      throw EngineMismatch("sol:k is construction-refused for k >= 3");
    if (w.kind == WordSet::Kind::explicit_list) return Choice::generic_finite;
    if (w.kind == WordSet::Kind::free_product) {
      if (a.size() == 1 || b.size() == 1) return Choice::direct_sum;
      throw EngineMismatch("free product of nontrivial groups is infinite; "
                           "no arithmetic engine");
    }
    throw EngineMismatch("no engine for word set " + w.to_string());
  };
  if (choice == Choice::automatic) choice = pick();

  switch (choice) {
    case Choice::direct_sum:
      if (!collapses_to_direct_sum(w) &&
          !(w.kind == WordSet::Kind::free_product && (a.size() == 1 || b.size() == 1)))
        throw EngineMismatch("direct-sum engine requires nil:1, sol:1 or burnside:2");
      p.engine_ = EngineKind::direct_sum;
      break;
    case Choice::class2_tensor:
      if (!(w.kind == WordSet::Kind::nilpotent && w.k == 2))
        throw EngineMismatch("class2-tensor engine requires nil:2");
      p.engine_ = EngineKind::class2_tensor;
      p.tensor_ = std::make_shared<PairTensorGroup>(p.aba_->group, p.abb_->group);
      break;
    case Choice::metabelian_lattice:
      if (!(w.kind == WordSet::Kind::solvable && w.k == 2))
        throw EngineMismatch("metabelian-lattice engine requires sol:2");
      if (!a.is_abelian() || !b.is_abelian())
        throw EngineMismatch("metabelian-lattice engine requires abelian factors");
      p.engine_ = EngineKind::metabelian_lattice;
      break;
    case Choice::generic_finite: {
      p.engine_ = EngineKind::generic_finite;
      auto res = generic_engine_enumerate(a, b, w, p.gen_cap_);
      if (res) p.gen_ = std::make_shared<GenericEnumeration>(std::move(*res));
      break;
    }
    case Choice::automatic:
      break;  // unreachable
  }
  return p;
}

const PairTensorGroup& BinaryVerbalProduct::tensor() const {
  if (!tensor_) throw EngineMismatch("tensor part only exists for class2 engine");
  return *tensor_;
}

const GenericEnumeration& BinaryVerbalProduct::enumeration() const {
  if (!gen_)
    throw BudgetExceeded("generic enumeration unresolved at cap " +
                         std::to_string(gen_cap_));
  return *gen_;
}

Finiteness BinaryVerbalProduct::finiteness() const {
  Finiteness f;
  switch (engine_) {
    case EngineKind::direct_sum:
      f.tag = Finiteness::Tag::finite;
      f.order = static_cast<unsigned long long>(a_->size()) * b_->size();
      break;
    case EngineKind::class2_tensor:
      f.tag = Finiteness::Tag::finite;
      f.order = static_cast<unsigned long long>(a_->size()) * b_->size() *
                static_cast<unsigned long long>(tensor_->order());
      break;
    case EngineKind::metabelian_lattice:
      if (lattice_rank() == 0) {
        f.tag = Finiteness::Tag::finite;
        f.order = static_cast<unsigned long long>(a_->size()) * b_->size();
      } else {
        f.tag = Finiteness::Tag::infinite;
      }
      break;
    case EngineKind::generic_finite:
      if (gen_) {
        f.tag = Finiteness::Tag::finite;
        f.order = gen_->group.size();
      } else {
        f.tag = Finiteness::Tag::unresolved;
        f.cap = gen_cap_;
      }
      break;
  }
  return f;
}

std::size_t BinaryVerbalProduct::lattice_rank() const {
  if (engine_ != EngineKind::metabelian_lattice) return 0;
  return (a_->size() - 1) * (b_->size() - 1);
}

std::string BinaryVerbalProduct::cartesian_description() const {
  switch (engine_) {
    case EngineKind::direct_sum:
     return "trivial";
    case EngineKind::class2_tensor:
      return "A_ab (x) B_ab = " + tensor_->canonical().to_string();
    case EngineKind::metabelian_lattice:
      return "free abelian of rank " + std::to_string(lattice_rank());
    case EngineKind::generic_finite:
      if (gen_) return "enumerated, order " + std::to_string(gen_->cart_members.size());
      return "unresolved";
  }
  return "?";
}

CartesianPart BinaryVerbalProduct::zero_u() const {
  switch (engine_) {
    case EngineKind::direct_sum: return std::monostate{};
    case EngineKind::class2_tensor: return tensor_->zero();
    case EngineKind::metabelian_lattice: return MetabVec{};
    case EngineKind::generic_finite: return Elt{0};
  }
  return std::monostate{};
}

NormalForm BinaryVerbalProduct::one() const { return NormalForm{0, 0, zero_u()}; }

NormalForm BinaryVerbalProduct::embed_a(Elt a) const { return NormalForm{a, 0, zero_u()}; }

NormalForm BinaryVerbalProduct::embed_b(Elt b) const { return NormalForm{0, b, zero_u()}; }

namespace {

void metab_accumulate(MetabVec& acc, Elt alpha, Elt beta, long long c) {
  if (alpha == 0 || beta == 0 || c == 0) return;  // e_{1,.} = e_{.,1} = 0
  auto key = std::make_pair(alpha, beta);
  auto it = acc.find(key);
  if (it == acc.end()) {
    acc.emplace(key, c);
  } else {
    it->second += c;
    if (it->second == 0) acc.erase(it);
  }
}

MetabVec metab_add(const MetabVec& x, const MetabVec& y) {
  MetabVec r = x;
  for (const auto& [k, c] : y) metab_accumulate(r, k.first, k.second, c);
  return r;
}

MetabVec metab_neg(const MetabVec& x) {
  MetabVec r;
  for (const auto& [k, c] : x) r[k] = -c;
  return r;
}

}  // namespace

// Right conjugation u -> g^-1 u g on the abelianized cartesian lattice,
// from the free-group identities
//   a [x,b] a^-1 = [ax,b][a,b]^-1   and   b [x,y] b^-1 = [x,b]^-1 [x,by].
MetabVec BinaryVerbalProduct::metab_right_conj_a(Elt a, const MetabVec& u) const {
  if (a == 0) return u;
  const Elt ainv = a_->inv(a);
  MetabVec r;
  for (const auto& [k, c] : u) {
    const auto [alpha, beta] = k;
    metab_accumulate(r, a_->mul(ainv, alpha), beta, c);
    metab_accumulate(r, ainv, beta, -c);
  }
  return r;
}

MetabVec BinaryVerbalProduct::metab_right_conj_b(Elt b, const MetabVec& u) const {
  if (b == 0) return u;
  const Elt binv = b_->inv(b);
  MetabVec r;
  for (const auto& [k, c] : u) {
    const auto [alpha, beta] = k;
    metab_accumulate(r, alpha, b_->mul(binv, beta), c);
    metab_accumulate(r, alpha, binv, -c);
  }
  return r;
}

NormalForm BinaryVerbalProduct::multiply(const NormalForm& x,
                                         const NormalForm& y) const {
  NormalForm r;
  r.a = a_->mul(x.a, y.a);
  r.b = b_->mul(x.b, y.b);
  switch (engine_) {
    case EngineKind::direct_sum:
      r.u = std::monostate{};
      break;
    case EngineKind::class2_tensor: {
      // (a,b,t)(a',b',t') = (aa', bb', t + t' - a'(x)b)
      const auto& t = std::get<PairTensorGroup::Vec>(x.u);
      const auto& t2 = std::get<PairTensorGroup::Vec>(y.u);
      auto cross = tensor_->pure(aba_->coords[y.a], abb_->coords[x.b]);
      r.u = tensor_->add(tensor_->add(t, t2), tensor_->neg(cross));
      break;
    }
    case EngineKind::metabelian_lattice: {
      // abu a'b'u' = (aa')(bb') R_{b'}([b^-1,a'^-1]) R_{b'}R_{a'}(u) u'
      const auto& u = std::get<MetabVec>(x.u);
      const auto& u2 = std::get<MetabVec>(y.u);
      MetabVec cross;  // [b^-1, a'^-1] = -e_{a'^-1, b^-1}
      metab_accumulate(cross, a_->inv(y.a), b_->inv(x.b), -1);
      MetabVec moved = metab_right_conj_b(y.b, metab_add(metab_right_conj_a(y.a, u), cross));
      r.u = metab_add(moved, u2);
      break;
    }
    case EngineKind::generic_finite: {
      const auto& en = enumeration();
      const Elt gx = en.group.mul(
          en.group.mul(en.a_embed[x.a], en.b_embed[x.b]),
          en.cart_members[std::get<Elt>(x.u)]);
      const Elt gy = en.group.mul(
          en.group.mul(en.a_embed[y.a], en.b_embed[y.b]),
          en.cart_members[std::get<Elt>(y.u)]);
      const Elt gz = en.group.mul(gx, gy);
      r.a = en.a_part[gz];
      r.b = en.b_part[gz];
      r.u = en.u_index[gz];
      break;
    }
  }
  return r;
}

NormalForm BinaryVerbalProduct::inverse(const NormalForm& x) const {
  NormalForm r;
  r.a = a_->inv(x.a);
  r.b = b_->inv(x.b);
  switch (engine_) {
    case EngineKind::direct_sum:
      r.u = std::monostate{};
      break;
    case EngineKind::class2_tensor: {
      // (a,b,t)^-1 = (a^-1, b^-1, -t - a(x)b)
      const auto& t = std::get<PairTensorGroup::Vec>(x.u);
      auto cross = tensor_->pure(aba_->coords[x.a], abb_->coords[x.b]);
      r.u = tensor_->neg(tensor_->add(t, cross));
      break;
    }
    case EngineKind::metabelian_lattice: {
      // solve (a,b,u)(a^-1,b^-1,w) = 1:
      // w = - R_{b^-1}( R_{a^-1}(u) - e_{a, b^-1} )
      const auto& u = std::get<MetabVec>(x.u);
      MetabVec cross;
      metab_accumulate(cross, x.a, b_->inv(x.b), -1);
      r.u = metab_neg(metab_right_conj_b(r.b, metab_add(metab_right_conj_a(r.a, u), cross)));
      break;
    }
    case EngineKind::generic_finite: {
      const auto& en = enumeration();
      const Elt gx = en.group.mul(
          en.group.mul(en.a_embed[x.a], en.b_embed[x.b]),
          en.cart_members[std::get<Elt>(x.u)]);
      const Elt gz = en.group.inv(gx);
      r.a = en.a_part[gz];
      r.b = en.b_part[gz];
      r.u = en.u_index[gz];
      break;
    }
  }
  return r;
}

NormalForm BinaryVerbalProduct::cross_commutator(Elt a, Elt b) const {
  const NormalForm ea = embed_a(a), eb = embed_b(b);
  return multiply(multiply(ea, eb), multiply(inverse(ea), inverse(eb)));
}

long long BinaryVerbalProduct::order_of(const NormalForm& x) const {
  if (engine_ == EngineKind::metabelian_lattice) {
    // bounded search with an escape: factor parts have bounded order, and
    // the lattice part of x^(lcm) is translation by a fixed vector
    const long long bound =
        static_cast<long long>(std::lcm(a_->size(), b_->size()));
    NormalForm acc = x;
    for (long long k = 1; k <= bound; ++k) {
      if (acc == one()) return k;
      acc = multiply(acc, x);
    }
    return 0;  // x^lcm is a nontrivial pure-lattice element: infinite order
  }
  NormalForm acc = x;
  long long k = 1;
  while (!(acc == one())) {
    acc = multiply(acc, x);
    ++k;
  }
  return k;
}

std::string BinaryVerbalProduct::format(const NormalForm& x) const {
  std::string s = "(" + a_->label(x.a) + ", " + b_->label(x.b) + ", ";
  switch (engine_) {
    case EngineKind::direct_sum:
      s += "0";
      break;
    case EngineKind::class2_tensor: {
      const auto& t = std::get<PairTensorGroup::Vec>(x.u);
      s += "[";
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(t[i]);
      }
      s += "]";
      break;
    }
    case EngineKind::metabelian_lattice: {
      const auto& u = std::get<MetabVec>(x.u);
      if (u.empty()) s += "0";
      for (const auto& [k, c] : u)
        s += std::to_string(c) + "*e(" + a_->label(k.first) + "," +
             b_->label(k.second) + ") ";
      break;
    }
    case EngineKind::generic_finite:
      s += "u" + std::to_string(std::get<Elt>(x.u));
      break;
  }
  return s + ")";
}

// --- materialization ----------------------------------------------------------

MaterializedProduct materialize(const BinaryVerbalProduct& p) {
  const Finiteness f = p.finiteness();
  if (!f.is_finite())
    throw BudgetExceeded("cannot materialize: " + f.to_string());
  if (f.order > default_cap()) throw SizeCapExceeded("product exceeds cap");

  std::vector<NormalForm> forms;
  switch (p.engine()) {
    case EngineKind::direct_sum:
      for (Elt a = 0; a < p.A().size(); ++a)
        for (Elt b = 0; b < p.B().size(); ++b)
          forms.push_back(NormalForm{a, b, std::monostate{}});
      break;
    case EngineKind::class2_tensor:
      for (Elt a = 0; a < p.A().size(); ++a)
        for (Elt b = 0; b < p.B().size(); ++b)
          for (long long t = 0; t < p.tensor().order(); ++t)
            forms.push_back(NormalForm{a, b, p.tensor().element_at(t)});
      break;
    case EngineKind::metabelian_lattice:
      for (Elt a = 0; a < p.A().size(); ++a)
        for (Elt b = 0; b < p.B().size(); ++b)
          forms.push_back(NormalForm{a, b, MetabVec{}});
      break;
    case EngineKind::generic_finite: {
      const auto& en = p.enumeration();
      for (Elt g = 0; g < en.group.size(); ++g)
        forms.push_back(NormalForm{en.a_part[g], en.b_part[g], en.u_index[g]});
      break;
    }
  }
  // identity first (it already is, by construction: a=0,b=0,u=0 or index 0)
  if (!(forms[0] == p.one())) throw CheckFailed("identity is not first");
  std::map<NormalForm, Elt> index_of;
  for (std::size_t i = 0; i < forms.size(); ++i)
    index_of[forms[i]] = static_cast<Elt>(i);
  if (index_of.size() != forms.size())
    throw CheckFailed("normal forms are not distinct");

  std::vector<std::vector<Elt>> table(forms.size(), std::vector<Elt>(forms.size()));
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (std::size_t j = 0; j < forms.size(); ++j)
      table[i][j] = index_of.at(p.multiply(forms[i], forms[j]));
  std::vector<std::string> labels(forms.size());
  for (std::size_t i = 0; i < forms.size(); ++i) labels[i] = p.format(forms[i]);
  return MaterializedProduct{FiniteGroup(std::move(table), std::move(labels)),
                             std::move(forms), std::move(index_of)};
}

// --- functorial maps ----------------------------------------------------------

namespace {

/// For each invariant-factor generator of src_ab, an element of the source
/// group whose abelianization coordinates are that unit vector.
std::vector<Elt> generator_reps(const FiniteGroup& g, const Abelianization& ab) {
  std::vector<Elt> reps(ab.group.coords(), 0);
  for (std::size_t p = 0; p < ab.group.coords(); ++p) {
    FgAbelianGroup::Vec unit = ab.group.zero();
    unit[p] = 1;
    bool found = false;
    for (Elt x = 0; x < g.size(); ++x)
      if (ab.coords[x] == unit) {
        reps[p] = x;
        found = true;
        break;
      }
    if (!found) throw CheckFailed("no representative for abelianization generator");
  }
  return reps;
}

}  // namespace

NormalForm map_through_factor_homs(const BinaryVerbalProduct& src,
                                   const BinaryVerbalProduct& dst,
                                   const std::vector<Elt>& fa,
                                   const std::vector<Elt>& fb,
                                   const NormalForm& x) {
  if (src.engine() != dst.engine())
    throw EngineMismatch("factor-hom transport needs matching engines");
  NormalForm r;
  r.a = fa[x.a];
  r.b = fb[x.b];
  switch (src.engine()) {
    case EngineKind::direct_sum:
      r.u = std::monostate{};
      break;
    case EngineKind::class2_tensor: {
      const auto repsA = generator_reps(src.A(), src.ab_a());
      const auto repsB = generator_reps(src.B(), src.ab_b());
      std::vector<FgAbelianGroup::Vec> mimg, nimg;
      for (Elt rep : repsA) mimg.push_back(dst.ab_a().coords[fa[rep]]);
      for (Elt rep : repsB) nimg.push_back(dst.ab_b().coords[fb[rep]]);
      r.u = src.tensor().map_through(dst.tensor(), mimg, nimg,
                                     std::get<PairTensorGroup::Vec>(x.u));
      break;
    }
    case EngineKind::metabelian_lattice: {
      MetabVec out;
      for (const auto& [k, c] : std::get<MetabVec>(x.u)) {
        const Elt alpha = fa[k.first], beta = fb[k.second];
        if (alpha == 0 || beta == 0) continue;
        out[{alpha, beta}] += c;
        if (out[{alpha, beta}] == 0) out.erase({alpha, beta});
      }
      r.u = std::move(out);
      break;
    }
    case EngineKind::generic_finite:
      throw EngineMismatch("use materialized homs for the generic engine");
  }
  return r;
}

// --- verbal-subgroup isomorphism report ----------------------------------------

PsiReport verify_psi_isomorphism(const BinaryVerbalProduct& p,
                                 unsigned long long budget) {
  PsiReport rep;
  const Subgroup wa = verbal_subgroup(p.A(), p.word_set());
  const Subgroup wb = verbal_subgroup(p.B(), p.word_set());
  rep.wa_order = wa.size();
  rep.wb_order = wb.size();

  if (p.engine() == EngineKind::metabelian_lattice) {
    // W(A) = W(B) = 1 for abelian factors; s2(P) = 1 because the product
    // is metabelian: commutators land in the abelian lattice.
    rep.wp_order = 1;
    rep.psi_isomorphism = wa.size() == 1 && wb.size() == 1;
    MetabVec sample;
    metab_accumulate(sample, p.A().size() > 1 ? 1 : 0, p.B().size() > 1 ? 1 : 0, 1);
    NormalForm u{0, 0, sample}, v = p.multiply(u, u);
    rep.commute_lemma = p.multiply(u, v) == p.multiply(v, u);
    rep.trivial_intersection = true;
    rep.ok = rep.psi_isomorphism && rep.commute_lemma;
    if (!rep.ok) rep.witness = "metabelian structural check failed";
    return rep;
  }

  const MaterializedProduct m = materialize(p);
  const FiniteGroup& pg = m.group;

  // W(P): brute evaluation when the tuple budget allows, else the
  // specialized series route (same verbal subgroup by Lemma-level facts).
  Subgroup wp = [&]() {
    unsigned long long tuples = 1;
    bool brute = true;
    for (const FreeWord& w : p.word_set().members()) {
      unsigned long long t = 1;
      for (std::uint32_t i = 0; i < w.arity(); ++i) {
        t *= pg.size();
        if (t > budget) {
          brute = false;
          break;
        }
      }
      tuples = std::max(tuples, t);
    }
    return brute ? verbal_subgroup_brute(pg, p.word_set(), budget)
                 : verbal_subgroup(pg, p.word_set());
  }();
  rep.wp_order = wp.size();

  // Psi: W(A) x W(B) -> W(P), (a,b) -> embed_a(a) embed_b(b)
  rep.psi_isomorphism = true;
  std::vector<Elt> image;
  for (Elt a : wa.members)
    for (Elt b : wb.members) {
      const NormalForm f = p.multiply(p.embed_a(a), p.embed_b(b));
      const Elt g = m.index_of.at(f);
      if (!wp.contains(g)) {
        rep.psi_isomorphism = false;
        rep.witness = "Psi image outside W(P): " + p.format(f);
      }
      image.push_back(g);
    }
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  if (image.size() != wa.size() * wb.size()) {
    rep.psi_isomorphism = false;
    rep.witness = "Psi is not injective";
  }
  if (image.size() != wp.size()) {
    rep.psi_isomorphism = false;
    rep.witness = "Psi is not surjective onto W(P)";
  }
  for (Elt a1 : wa.members)
    for (Elt b1 : wb.members)
      for (Elt a2 : wa.members)
        for (Elt b2 : wb.members) {
          const auto lhs = p.multiply(p.multiply(p.embed_a(a1), p.embed_b(b1)),
                                      p.multiply(p.embed_a(a2), p.embed_b(b2)));
          const auto rhs = p.multiply(p.embed_a(p.A().mul(a1, a2)),
                                      p.embed_b(p.B().mul(b1, b2)));
          if (!(lhs == rhs)) {
            rep.psi_isomorphism = false;
            rep.witness = "Psi is not a homomorphism";
          }
        }

  // commute lemma: W(A) commutes with B and with the cartesian part
  rep.commute_lemma = true;
  std::vector<Elt> cart;
  for (Elt g = 0; g < pg.size(); ++g)
    if (m.forms[g].a == 0 && m.forms[g].b == 0) cart.push_back(g);
  for (Elt a : wa.members) {
    const Elt ea = m.index_of.at(p.embed_a(a));
    for (Elt b = 0; b < p.B().size(); ++b) {
      const Elt eb = m.index_of.at(p.embed_b(b));
      if (pg.mul(ea, eb) != pg.mul(eb, ea)) {
        rep.commute_lemma = false;
        rep.witness = "W(A) element does not commute with B";
      }
    }
    for (Elt c : cart)
      if (pg.mul(ea, c) != pg.mul(c, ea)) {
        rep.commute_lemma = false;
        rep.witness = "W(A) element does not commute with the cartesian part";
      }
  }
  // symmetric half for W(B)
  for (Elt b : wb.members) {
    const Elt eb = m.index_of.at(p.embed_b(b));
    for (Elt a = 0; a < p.A().size(); ++a) {
      const Elt ea = m.index_of.at(p.embed_a(a));
      if (pg.mul(eb, ea) != pg.mul(ea, eb)) {
        rep.commute_lemma = false;
        rep.witness = "W(B) element does not commute with A";
      }
    }
  }

  // trivial intersection:  W(P) cap cartesian = {1}
  rep.trivial_intersection = true;
  for (Elt g : wp.members)
    if (m.forms[g].a == 0 && m.forms[g].b == 0 && g != 0) {
      rep.trivial_intersection = false;
      rep.witness = "W(P) meets the cartesian part at " + p.format(m.forms[g]);
    }

  rep.ok = rep.psi_isomorphism && rep.commute_lemma && rep.trivial_intersection;
  return rep;
}

// --- quotient by M, N -----------------------------------------------------------

QuotientByMN quotient_by_mn(const BinaryVerbalProduct& p, const Subgroup& m_in,
                            const Subgroup& n_in) {
  // re-anchor the subgroups on the product's own factor copies (the caller
  // usually built them over its originals; indexing is identical)
  if (m_in.members.empty() || m_in.mask.size() != p.A().size())
    throw NotNormal("M is not a subgroup of A");
  if (n_in.members.empty() || n_in.mask.size() != p.B().size())
    throw NotNormal("N is not a subgroup of B");
  const Subgroup m = subgroup_generated(p.A(), m_in.members);
  const Subgroup n = subgroup_generated(p.B(), n_in.members);
  if (m.members != m_in.members || n.members != n_in.members)
    throw NotNormal("subgroup is not closed in the product's factor");
  if (!is_normal(p.A(), m)) throw NotNormal("M is not normal in A");
  if (!is_normal(p.B(), n)) throw NotNormal("N is not normal in B");
  QuotientResult qa = quotient(p.A(), m);
  QuotientResult qb = quotient(p.B(), n);

  BinaryVerbalProduct prod = BinaryVerbalProduct::build(
      qa.group, qb.group, p.word_set(),
      p.engine() == EngineKind::generic_finite
          ? BinaryVerbalProduct::Choice::generic_finite
          : BinaryVerbalProduct::Choice::automatic);

  MaterializedProduct src = materialize(p);
  MaterializedProduct dst = materialize(prod);

  // the induced surjection, element by element
  std::vector<Elt> img(src.group.size());
  if (p.engine() == EngineKind::generic_finite) {
    // determined by generator images
    std::vector<Elt> gens, gimgs;
    for (Elt a = 0; a < p.A().size(); ++a) {
      gens.push_back(src.index_of.at(p.embed_a(a)));
      gimgs.push_back(dst.index_of.at(prod.embed_a(qa.projection[a])));
    }
    for (Elt b = 0; b < p.B().size(); ++b) {
      gens.push_back(src.index_of.at(p.embed_b(b)));
      gimgs.push_back(dst.index_of.at(prod.embed_b(qb.projection[b])));
    }
    auto hom = hom_from_generator_images(src.group, dst.group, gens, gimgs);
    if (!hom) throw CheckFailed("induced quotient map is not a homomorphism");
    img = hom->image;
  } else {
    for (Elt g = 0; g < src.group.size(); ++g)
      img[g] = dst.index_of.at(map_through_factor_homs(
          p, prod, qa.projection, qb.projection, src.forms[g]));
  }
  GroupHom check{&src.group, &dst.group, img};
  if (!check.is_valid())
    throw CheckFailed("induced quotient map is not a homomorphism");

  // kernel == normal closure of embedded M and N
  std::vector<Elt> seeds;
  for (Elt x : m.members) seeds.push_back(src.index_of.at(p.embed_a(x)));
  for (Elt x : n.members) seeds.push_back(src.index_of.at(p.embed_b(x)));
  const Subgroup closure = normal_closure(src.group, seeds);
  std::vector<Elt> kernel;
  for (Elt g = 0; g < src.group.size(); ++g)
    if (img[g] == 0) kernel.push_back(g);
  const bool matches = kernel == closure.members;
  return QuotientByMN{std::move(prod), std::move(src), std::move(dst),
                      std::move(img), matches};
}

}  // namespace verbal
