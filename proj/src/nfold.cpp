#include "verbal/nfold.hpp"

#include <algorithm>

namespace verbal {

namespace {

bool word_set_collapses(const WordSet& w) {
  return (w.kind == WordSet::Kind::nilpotent && w.k == 1) ||
         (w.kind == WordSet::Kind::solvable && w.k == 1) ||
         (w.kind == WordSet::Kind::burnside && w.k == 2);
}

}  // namespace

NfoldProduct::NfoldProduct(const FiniteGroup& g, std::size_t indices,
                           const WordSet& w)
    : g_(std::make_shared<FiniteGroup>(g)),
      ab_(std::make_shared<Abelianization>(abelianization(g))),
      w_(w),
      m_(indices),
      with_tensor_(false) {
  if (indices < 1) throw EngineMismatch("n-fold product needs at least one index");
  if (w.kind == WordSet::Kind::nilpotent && w.k == 2) {
    with_tensor_ = true;
    tensor_ = PairTensorGroup(ab_->group, ab_->group);
  } else if (word_set_collapses(w)) {
    with_tensor_ = false;
  } else {
    throw EngineMismatch("n-fold powers support nil:2 and the direct-sum "
                         "word sets (nil:1, sol:1, burnside:2)");
  }
}

std::size_t NfoldProduct::pair_index(std::size_t i, std::size_t j) const {
  // lex position of (i, j), i < j, among all pairs
  return i * m_ - i * (i + 1) / 2 + (j - i - 1);
}

unsigned long long NfoldProduct::order() const {
  unsigned long long o = 1;
  for (std::size_t i = 0; i < m_; ++i) o *= g_->size();
  if (with_tensor_) {
    const unsigned long long t = static_cast<unsigned long long>(tensor_.order());
    for (std::size_t p = 0; p < pair_count(); ++p) o *= t;
  }
  return o;
}

NfoldElt NfoldProduct::one() const {
  NfoldElt e;
  e.comp.assign(m_, 0);
  e.pair_t.assign(pair_count(),
                  with_tensor_ ? tensor_.zero() : PairTensorGroup::Vec{});
  return e;
}

NfoldElt NfoldProduct::embed(std::size_t index, Elt g) const {
  NfoldElt e = one();
  e.comp[index] = g;
  return e;
}

NfoldElt NfoldProduct::multiply(const NfoldElt& x, const NfoldElt& y) const {
  NfoldElt r = one();
  for (std::size_t i = 0; i < m_; ++i) r.comp[i] = g_->mul(x.comp[i], y.comp[i]);
  if (with_tensor_) {
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = i + 1; j < m_; ++j) {
        const std::size_t k = pair_index(i, j);
        // pairwise class-2 law: t + t' - y_i (x) x_j
        auto cross = tensor_.pure(ab_->coords[y.comp[i]], ab_->coords[x.comp[j]]);
        r.pair_t[k] =
            tensor_.add(tensor_.add(x.pair_t[k], y.pair_t[k]), tensor_.neg(cross));
      }
  }
  return r;
}

NfoldElt NfoldProduct::inverse(const NfoldElt& x) const {
  NfoldElt r = one();
  for (std::size_t i = 0; i < m_; ++i) r.comp[i] = g_->inv(x.comp[i]);
  if (with_tensor_) {
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = i + 1; j < m_; ++j) {
        const std::size_t k = pair_index(i, j);
        auto cross = tensor_.pure(ab_->coords[x.comp[i]], ab_->coords[x.comp[j]]);
        r.pair_t[k] = tensor_.neg(tensor_.add(x.pair_t[k], cross));
      }
  }
  return r;
}

std::vector<std::size_t> NfoldProduct::support(const NfoldElt& x) const {
  std::vector<char> in(m_, 0);
  for (std::size_t i = 0; i < m_; ++i)
    if (x.comp[i] != 0) in[i] = 1;
  if (with_tensor_) {
    const auto zero = tensor_.zero();
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = i + 1; j < m_; ++j)
        if (x.pair_t[pair_index(i, j)] != zero) in[i] = in[j] = 1;
  }
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < m_; ++i)
    if (in[i]) s.push_back(i);
  return s;
}

std::optional<NfoldElt> NfoldProduct::push_forward(
    const NfoldProduct& target,
    const std::vector<std::optional<std::size_t>>& index_map,
    const NfoldElt& x) const {
  const auto supp = support(x);
  // the map must cover the support injectively
  std::vector<char> hit(target.m_, 0);
  for (std::size_t i : supp) {
    if (!index_map[i]) return std::nullopt;
    const std::size_t p = *index_map[i];
    if (p >= target.m_ || hit[p]) return std::nullopt;
    hit[p] = 1;
  }
  // transport the canonical writing: relabeled factor components are
  // multiplied out in the target (index inversions pick up their
  // commutator corrections there), then the central tensor part moves
  // additively, with [emb_p(a), emb_q(b)] = -swap(a (x) b) when p > q
  NfoldElt r = target.one();
  for (std::size_t i = 0; i < m_; ++i) {
    if (x.comp[i] == 0) continue;
    r = target.multiply(r, target.embed(*index_map[i], x.comp[i]));
  }
  if (with_tensor_) {
    const auto zero = tensor_.zero();
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = i + 1; j < m_; ++j) {
        const auto& t = x.pair_t[pair_index(i, j)];
        if (t == zero) continue;
        const std::size_t p = *index_map[i], q = *index_map[j];
        const std::size_t k = target.pair_index(std::min(p, q), std::max(p, q));
        const auto piece =
            p < q ? t : tensor_.neg(tensor_.swap_sides(t));
        r.pair_t[k] = target.tensor_.add(r.pair_t[k], piece);
      }
  }
  return r;
}

std::vector<NfoldElt> NfoldProduct::elements(unsigned long long cap) const {
  const unsigned long long n = order();
  if (n > cap) throw BudgetExceeded("n-fold power too large to enumerate");
  std::vector<NfoldElt> out;
  out.reserve(static_cast<std::size_t>(n));
  NfoldElt cur = one();
  const long long torder = with_tensor_ ? tensor_.order() : 1;
  std::vector<long long> slot(pair_count(), 0);
  while (true) {
    out.push_back(cur);
    std::size_t i = 0;
    for (; i < m_; ++i) {
      if (++cur.comp[i] < g_->size()) break;
      cur.comp[i] = 0;
    }
    if (i < m_) continue;
    if (!with_tensor_) break;
    std::size_t k = 0;
    for (; k < pair_count(); ++k) {
      if (++slot[k] < torder) break;
      slot[k] = 0;
    }
    if (k == pair_count()) break;
    for (std::size_t t = 0; t < pair_count(); ++t)
      cur.pair_t[t] = tensor_.element_at(slot[t]);
  }
  return out;
}

std::optional<NfoldElt> include_subproduct(const NfoldProduct& src,
                                           const NfoldProduct& dst,
                                           const std::vector<std::size_t>& index_map,
                                           const NfoldElt& x) {
  std::vector<std::optional<std::size_t>> m(src.indices());
  for (std::size_t i = 0; i < src.indices(); ++i) m[i] = index_map[i];
  return src.push_forward(dst, m, x);
}

}  // namespace verbal
