#include "verbal/generic_engine.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>

namespace verbal {

namespace {

// A letter of a reduced free-product word: factor side + nontrivial element.
struct Letter {
  bool side_b;
  Elt elt;
  bool operator==(const Letter&) const = default;
  bool operator<(const Letter& o) const {
    if (side_b != o.side_b) return side_b < o.side_b;
    return elt < o.elt;
  }
};
using Word = std::vector<Letter>;

/// Coset-style congruence closure for the clamp (A*B)/W(A*B), run on the
/// presentation whose generators are the nontrivial factor elements and
/// whose relators are the factor multiplication tables plus verbal
/// instances. All relators are traced from every class (normal closure),
/// the edge table is kept forward-backward consistent, and coincidences
/// are processed eagerly, so the enumeration is sound; the completed table
/// is re-verified before use.
class Closure {
 public:
  Closure(const FiniteGroup& a, const FiniteGroup& b, const WordSet& w,
          std::size_t cap)
      : a_(a), b_(b), wordset_(w), cap_(cap) {
    n_gens_ = (a_.size() - 1) + (b_.size() - 1);
    new_class(Word{});
    for (Elt x = 1; x < a_.size(); ++x) new_class(Word{{false, x}});
    for (Elt x = 1; x < b_.size(); ++x) new_class(Word{{true, x}});

    // factor-table relators: a_i a_j (a_i a_j)^-1
    auto add_table = [&](const FiniteGroup& f, bool side) {
      for (Elt i = 1; i < f.size(); ++i)
        for (Elt j = 1; j < f.size(); ++j) {
          Word r{{side, i}, {side, j}};
          const Elt k = f.mul(i, j);
          if (k != 0) r.push_back({side, f.inv(k)});
          fixed_relators_.push_back(reduce(r));
        }
    };
    add_table(a_, false);
    add_table(b_, true);

    // verbal instances: for the left-normed commutator families it is
    // enough to substitute generator letters (they normally generate the
    // lower central term); other word sets get instances over class
    // representatives, refreshed as the enumeration grows
    if (w.kind == WordSet::Kind::nilpotent) {
      std::vector<Word> letters;
      for (Elt x = 1; x < a_.size(); ++x) letters.push_back({{false, x}});
      for (Elt x = 1; x < b_.size(); ++x) letters.push_back({{true, x}});
      if (letters.empty()) return;  // both factors trivial
      std::set<Word> seen;
      const FreeWord nk = word_nilpotent(w.k);
      std::vector<std::size_t> odo(nk.arity(), 0);
      while (true) {
        std::vector<Word> tuple(nk.arity());
        for (std::size_t i = 0; i < tuple.size(); ++i) tuple[i] = letters[odo[i]];
        Word inst = substitute(nk, tuple);
        if (!inst.empty() && seen.insert(inst).second)
          fixed_relators_.push_back(std::move(inst));
        std::size_t i = 0;
        for (; i < odo.size(); ++i) {
          if (++odo[i] < letters.size()) break;
          odo[i] = 0;
        }
        if (i == odo.size()) break;
      }
    } else {
      for (const FreeWord& fw : w.members())
        if (!fw.is_empty()) dynamic_words_.push_back(fw);
    }
  }

  /// Runs rounds at doubling length bounds, with a verification feedback
  /// loop: class-level verbal failures re-enter as relators.
  bool run() {
    const bool debug = std::getenv("VERBALFORGE_TRACE") != nullptr;
    for (int attempt = 0; attempt < 64; ++attempt) {
      std::size_t bound = 4;
      constexpr std::size_t bound_limit = 1 << 16;
      while (true) {
        const bool ok = round(bound);
        if (debug)
          std::fprintf(stderr, "closure: bound=%zu live=%zu total=%zu %s\n",
                       bound, live_, parent_.size(),
                       ok ? "stable" : (overflowed_ ? "overflow" : "deferred"));
        if (ok) break;
        if (overflowed_) return false;
        if (bound > bound_limit) return false;
        bound *= 2;
      }
      if (!build_dense()) return false;
      const auto failing = verbal_failures();
      if (failing.empty()) return true;
      if (debug)
        std::fprintf(stderr, "closure: feeding back %zu verbal failures\n",
                     failing.size());
      for (const Word& w : failing) feedback_relators_.push_back(w);
    }
    return false;
  }

  std::size_t gen_index(const Letter& l) const {
    return l.side_b ? (a_.size() - 1) + (l.elt - 1) : l.elt - 1;
  }
  std::size_t dense_count() const { return root_of_dense_.size(); }
  std::size_t dense_of(int cls) { return dense_of_root_.at(find(cls)); }
  int class_of_a(Elt x) { return x == 0 ? 0 : static_cast<int>(x); }
  int class_of_b(Elt x) {
    return x == 0 ? 0 : static_cast<int>(a_.size() - 1 + x);
  }
  const std::vector<std::vector<Elt>>& dense_table() const { return q_table_; }

 private:
  const FiniteGroup& a_;
  const FiniteGroup& b_;
  WordSet wordset_;
  std::size_t cap_;
  std::vector<Word> fixed_relators_;
  std::vector<FreeWord> dynamic_words_;   // substituted over class reps
  std::vector<Word> feedback_relators_;   // from failed verification
  std::size_t n_gens_ = 0;

  std::vector<int> parent_;
  std::vector<Word> rep_;
  std::vector<std::vector<int>> mul_;
  std::map<Word, int> word_index_;
  std::deque<std::pair<int, int>> pending_;
  std::size_t live_ = 0;
  bool overflowed_ = false;
  bool deferred_ = false;

  std::map<int, std::size_t> dense_of_root_;
  std::vector<int> root_of_dense_;
  std::vector<std::vector<Elt>> q_table_;

  int find(int c) {
    while (parent_[c] != c) {
      parent_[c] = parent_[parent_[c]];
      c = parent_[c];
    }
    return c;
  }

  Word reduce_append(Word w, const Letter& l) const {
    if (l.elt == 0) return w;
    if (!w.empty() && w.back().side_b == l.side_b) {
      const FiniteGroup& f = l.side_b ? b_ : a_;
      const Elt merged = f.mul(w.back().elt, l.elt);
      w.pop_back();
      if (merged != 0) w.push_back({l.side_b, merged});
      return w;
    }
    w.push_back(l);
    return w;
  }

  Word reduce(const Word& w) const {
    Word r;
    for (const Letter& l : w) r = reduce_append(std::move(r), l);
    return r;
  }

  Word inverse_word(const Word& w) const {
    Word r;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      r.push_back({it->side_b, (it->side_b ? b_ : a_).inv(it->elt)});
    return r;
  }

  /// w(tuple) as a reduced word, for a tuple of words.
  Word substitute(const FreeWord& w, const std::vector<Word>& tuple) const {
    Word out;
    for (const auto& s : w.syllables()) {
      const Word& base = tuple[s.letter - 1];
      const Word piece = s.exponent < 0 ? inverse_word(base) : base;
      const long long reps = s.exponent < 0 ? -s.exponent : s.exponent;
      for (long long i = 0; i < reps; ++i)
        for (const Letter& l : piece) out = reduce_append(std::move(out), l);
    }
    return out;
  }

  int new_class(Word w) {
    const int id = static_cast<int>(parent_.size());
    parent_.push_back(id);
    rep_.push_back(w);
    mul_.emplace_back(n_gens_, -1);
    word_index_.emplace(std::move(w), id);
    ++live_;
    if (live_ > cap_) overflowed_ = true;
    return id;
  }

  Letter inverse_letter(const Letter& l) const {
    return {l.side_b, (l.side_b ? b_ : a_).inv(l.elt)};
  }

  /// Records x * l = y and the inverse edge y * l^-1 = x; a conflicting
  /// inverse edge is a coincidence.
  void link(int x, const Letter& l, int y) {
    mul_[x][gen_index(l)] = y;
    const std::size_t gi = gen_index(inverse_letter(l));
    const int back = mul_[y][gi];
    if (back == -1)
      mul_[y][gi] = x;
    else if (find(back) != find(x))
      pending_.emplace_back(back, x);
  }

  int step(int c, const Letter& l, std::size_t bound, bool& created) {
    const int root = find(c);
    const std::size_t g = gen_index(l);
    int d = mul_[root][g];
    if (d != -1) return find(d);
    const Word w = reduce_append(rep_[root], l);
    if (auto it = word_index_.find(w); it != word_index_.end()) {
      d = find(it->second);
      link(root, l, d);
      return d;
    }
    if (w.size() > bound) {
      deferred_ = true;
      return -1;
    }
    d = new_class(w);
    if (overflowed_) return -1;
    link(root, l, d);
    created = true;
    return d;
  }

  void flush() {
    while (!pending_.empty()) {
      auto [p, q] = pending_.front();
      pending_.pop_front();
      p = find(p);
      q = find(q);
      if (p == q) continue;
      if (rep_[q].size() < rep_[p].size()) std::swap(p, q);
      parent_[q] = p;
      --live_;
      for (std::size_t g = 0; g < n_gens_; ++g) {
        if (mul_[q][g] == -1) continue;
        if (mul_[p][g] == -1)
          mul_[p][g] = mul_[q][g];
        else
          pending_.emplace_back(mul_[p][g], mul_[q][g]);
      }
    }
  }

  /// Traces base * r and merges the endpoint with the base.
  bool trace(const Word& r, int base, std::size_t bound) {
    bool created = false;
    int c = base;
    for (const Letter& l : r) {
      c = step(c, l, bound, created);
      if (c < 0) {
        const bool merged = !pending_.empty();
        flush();
        return created || merged;
      }
    }
    const bool changed = find(c) != find(base) || !pending_.empty();
    if (find(c) != find(base)) pending_.emplace_back(c, base);
    flush();
    return created || changed;
  }

  std::vector<int> roots() {
    std::vector<int> r;
    for (int c = 0; c < static_cast<int>(parent_.size()); ++c)
      if (find(c) == c) r.push_back(c);
    return r;
  }

  Letter letter_of(std::size_t g) const {
    if (g < a_.size() - 1) return {false, static_cast<Elt>(g + 1)};
    return {true, static_cast<Elt>(g - (a_.size() - 1) + 1)};
  }

  /// Re-derives shortest representatives by BFS from the identity along
  /// defined edges; long stale reps otherwise stall the length bound.
  void shorten_reps() {
    std::deque<int> queue;
    std::map<int, Word> best;
    const int id = find(0);
    best[id] = Word{};
    queue.push_back(id);
    while (!queue.empty()) {
      const int c = queue.front();
      queue.pop_front();
      for (std::size_t g = 0; g < n_gens_; ++g) {
        int d = mul_[c][g];
        if (d == -1) continue;
        d = find(d);
        if (!best.count(d)) {
          best[d] = reduce_append(best[c], letter_of(g));
          queue.push_back(d);
        }
      }
    }
    for (const auto& [c, w] : best)
      if (w.size() < rep_[c].size()) rep_[c] = w;
  }

  /// The relator words for one pass: fixed + feedback + dynamic instances
  /// substituted over current class representatives.
  std::vector<Word> pass_relators() {
    std::vector<Word> rs = fixed_relators_;
    rs.insert(rs.end(), feedback_relators_.begin(), feedback_relators_.end());
    if (!dynamic_words_.empty()) {
      std::vector<Word> reps;
      for (int c : roots()) reps.push_back(rep_[c]);
      std::set<Word> seen;
      for (const FreeWord& fw : dynamic_words_) {
        const std::uint32_t arity = fw.arity();
        double count = 1;
        for (std::uint32_t i = 0; i < arity; ++i)
          count *= static_cast<double>(reps.size());
        if (count > 2e6) {
          overflowed_ = true;
          return rs;
        }
        std::vector<std::size_t> odo(arity, 0);
        while (true) {
          std::vector<Word> tuple(arity);
          for (std::uint32_t i = 0; i < arity; ++i) tuple[i] = reps[odo[i]];
          Word inst = substitute(fw, tuple);
          if (!inst.empty() && seen.insert(inst).second) rs.push_back(inst);
          std::size_t i = 0;
          for (; i < arity; ++i) {
            if (++odo[i] < reps.size()) break;
            odo[i] = 0;
          }
          if (i == arity) break;
        }
      }
    }
    return rs;
  }

  bool relator_pass(std::size_t bound) {
    bool changed = false;
    const auto rs = pass_relators();
    if (overflowed_) return false;
    const auto bases = roots();
    if (static_cast<double>(rs.size()) * bases.size() > 5e8) {
      overflowed_ = true;
      return false;
    }
    for (const Word& r : rs)
      for (int base : bases) {
        if (trace(r, base, bound)) changed = true;
        if (overflowed_) return false;
      }
    return changed;
  }

  bool round(std::size_t bound) {
    while (true) {
      if (overflowed_) return false;
      deferred_ = false;
      // drive the relator congruence to a fixpoint before expanding the
      // table: completing first would flood the free-product ball
      while (relator_pass(bound)) {
        if (overflowed_) return false;
        shorten_reps();
      }
      if (overflowed_) return false;
      shorten_reps();
      if (deferred_) return false;  // some instance needs a longer bound
      bool grew = false;
      for (int c : roots()) {
        if (find(c) != c) continue;
        for (std::size_t g = 0; g < n_gens_; ++g) {
          bool created = false;
          if (step(find(c), letter_of(g), bound, created) < 0 && overflowed_)
            return false;
          grew |= created || !pending_.empty();
          flush();
        }
      }
      if (!grew) return !deferred_;
    }
  }

  /// Dense ids and the full class multiplication table, with the group
  /// axioms validated.
  bool build_dense() {
    root_of_dense_.clear();
    dense_of_root_.clear();
    for (int c = 0; c < static_cast<int>(parent_.size()); ++c)
      if (find(c) == c) {
        dense_of_root_[c] = root_of_dense_.size();
        root_of_dense_.push_back(c);
      }
    const std::size_t n = root_of_dense_.size();
    if (n > 8192) throw SizeCapExceeded("clamp group too large to tabulate");
    q_table_.assign(n, std::vector<Elt>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        int c = root_of_dense_[i];
        for (const Letter& l : rep_[root_of_dense_[j]]) {
          c = mul_[find(c)][gen_index(l)];
          if (c < 0) return false;
          c = find(c);
        }
        q_table_[i][j] = static_cast<Elt>(dense_of_root_.at(find(c)));
      }
    // the identity class keeps the empty word, so it stays at dense 0
    if (dense_of_root_.at(find(0)) != 0) return false;
    try {
      FiniteGroup axioms(q_table_);
    } catch (const MalformedTable&) {
      return false;
    }
    return true;
  }

  /// Verbal instances over the completed table that fail to be trivial,
  /// returned as relator words over current representatives.
  std::vector<Word> verbal_failures() {
    std::vector<Word> failures;
    const std::size_t n = root_of_dense_.size();
    std::vector<Elt> inv(n, 0);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (q_table_[x][y] == 0) {
          inv[x] = static_cast<Elt>(y);
          break;
        }
    for (const FreeWord& w : wordset_.members()) {
      if (w.is_empty()) continue;
      const std::uint32_t arity = w.arity();
      double tuples = 1;
      for (std::uint32_t i = 0; i < arity; ++i) tuples *= static_cast<double>(n);
      if (tuples > 5e8) throw BudgetExceeded("clamp verification exceeds budget");
      std::vector<Elt> tuple(arity, 0);
      while (true) {
        Elt acc = 0;
        for (const auto& s : w.syllables()) {
          Elt base = tuple[s.letter - 1];
          long long e = s.exponent;
          if (e < 0) {
            base = inv[base];
            e = -e;
          }
          for (long long i = 0; i < e; ++i) acc = q_table_[acc][base];
        }
        if (acc != 0 && failures.size() < 512) {
          std::vector<Word> words(arity);
          for (std::uint32_t i = 0; i < arity; ++i)
            words[i] = rep_[root_of_dense_[tuple[i]]];
          failures.push_back(substitute(w, words));
        }
        std::size_t i = 0;
        for (; i < arity; ++i) {
          if (++tuple[i] < n) break;
          tuple[i] = 0;
        }
        if (i == arity) break;
      }
    }
    return failures;
  }
};

}  // namespace

std::optional<GenericEnumeration> generic_engine_enumerate(const FiniteGroup& a,
                                                           const FiniteGroup& b,
                                                           const WordSet& w,
                                                           std::size_t cap) {
  Closure closure(a, b, w, cap);
  if (!closure.run()) return std::nullopt;

  const auto& q = closure.dense_table();
  std::vector<Elt> qa(a.size()), qb(b.size());
  for (Elt x = 0; x < a.size(); ++x)
    qa[x] = static_cast<Elt>(closure.dense_of(closure.class_of_a(x)));
  for (Elt x = 0; x < b.size(); ++x)
    qb[x] = static_cast<Elt>(closure.dense_of(closure.class_of_b(x)));

  // subgroup of clamp x A x B generated by the two factor embeddings
  const std::uint64_t na = a.size(), nb = b.size();
  auto key = [&](Elt qq, Elt xa, Elt xb) {
    return (static_cast<std::uint64_t>(qq) * na + xa) * nb + xb;
  };
  struct Triple {
    Elt q, a, b;
  };
  std::vector<Triple> elems;
  std::map<std::uint64_t, Elt> index;
  auto add = [&](Elt qq, Elt xa, Elt xb) {
    const auto k = key(qq, xa, xb);
    if (index.count(k)) return;
    index[k] = static_cast<Elt>(elems.size());
    elems.push_back({qq, xa, xb});
  };
  add(0, 0, 0);
  std::vector<Triple> gens;
  for (Elt x = 1; x < a.size(); ++x) gens.push_back({qa[x], x, 0});
  for (Elt x = 1; x < b.size(); ++x) gens.push_back({qb[x], 0, x});
  for (std::size_t head = 0; head < elems.size(); ++head) {
    const Triple t = elems[head];
    for (const Triple& g : gens)
      add(q[t.q][g.q], a.mul(t.a, g.a), b.mul(t.b, g.b));
    if (elems.size() > 16384)
      throw SizeCapExceeded("enumerated product too large to tabulate");
  }
  const std::size_t np = elems.size();

  std::vector<std::vector<Elt>> table(np, std::vector<Elt>(np));
  for (std::size_t i = 0; i < np; ++i)
    for (std::size_t j = 0; j < np; ++j)
      table[i][j] = index.at(key(q[elems[i].q][elems[j].q],
                                 a.mul(elems[i].a, elems[j].a),
                                 b.mul(elems[i].b, elems[j].b)));

  GenericEnumeration out{FiniteGroup(std::move(table)),
                         {}, {}, {}, {}, {}, {},
                         closure.dense_count(),
                         closure.dense_count()};
  out.a_embed.resize(a.size());
  out.b_embed.resize(b.size());
  for (Elt x = 0; x < a.size(); ++x) out.a_embed[x] = index.at(key(qa[x], x, 0));
  for (Elt x = 0; x < b.size(); ++x) out.b_embed[x] = index.at(key(qb[x], 0, x));
  out.a_part.resize(np);
  out.b_part.resize(np);
  for (std::size_t g = 0; g < np; ++g) {
    out.a_part[g] = elems[g].a;
    out.b_part[g] = elems[g].b;
    if (elems[g].a == 0 && elems[g].b == 0)
      out.cart_members.push_back(static_cast<Elt>(g));
  }
  // normal-form section: u = (embed_a(a) embed_b(b))^-1 g is cartesian
  out.u_index.resize(np);
  for (std::size_t g = 0; g < np; ++g) {
    const Elt ab = out.group.mul(out.a_embed[elems[g].a], out.b_embed[elems[g].b]);
    const Elt u = out.group.mul(out.group.inv(ab), static_cast<Elt>(g));
    const auto it =
        std::lower_bound(out.cart_members.begin(), out.cart_members.end(), u);
    if (it == out.cart_members.end() || *it != u)
      throw CheckFailed("normal-form section leaves the cartesian part");
    out.u_index[g] = static_cast<Elt>(it - out.cart_members.begin());
  }
  if (np != a.size() * b.size() * out.cart_members.size())
    throw CheckFailed("normal-form counting |P| = |A||B||cart| fails");
  return out;
}

}  // namespace verbal
