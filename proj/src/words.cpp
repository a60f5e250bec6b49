#include "verbal/words.hpp"

#include <algorithm>
#include <sstream>

namespace verbal {

FreeWord::FreeWord(std::vector<Syllable> syllables) {
  for (const auto& s : syllables) {
    if (s.letter == 0) throw ParseError("letters are 1-based");
    if (s.exponent == 0) continue;
    if (!syllables_.empty() && syllables_.back().letter == s.letter) {
      syllables_.back().exponent += s.exponent;
      if (syllables_.back().exponent == 0) syllables_.pop_back();
    } else {
      syllables_.push_back(s);
    }
  }
}

FreeWord FreeWord::letter(std::uint32_t i, long long e) {
  return FreeWord({{i, e}});
}

std::uint32_t FreeWord::arity() const {
  std::uint32_t a = 0;
  for (const auto& s : syllables_) a = std::max(a, s.letter);
  return a;
}

std::size_t FreeWord::length() const {
  std::size_t l = 0;
  for (const auto& s : syllables_)
    l += static_cast<std::size_t>(s.exponent < 0 ? -s.exponent : s.exponent);
  return l;
}

FreeWord FreeWord::operator*(const FreeWord& other) const {
  std::vector<Syllable> all = syllables_;
  all.insert(all.end(), other.syllables_.begin(), other.syllables_.end());
  // FreeWord's constructor only merges ADJACENT syllables once; repeated
  // cancellation needs a stack pass.
  std::vector<Syllable> stack;
  for (const auto& s : all) {
    if (s.exponent == 0) continue;
    if (!stack.empty() && stack.back().letter == s.letter) {
      stack.back().exponent += s.exponent;
      if (stack.back().exponent == 0) stack.pop_back();
    } else {
      stack.push_back(s);
    }
  }
  FreeWord w;
  w.syllables_ = std::move(stack);
  return w;
}

FreeWord FreeWord::inverse() const {
  std::vector<Syllable> rev(syllables_.rbegin(), syllables_.rend());
  for (auto& s : rev) s.exponent = -s.exponent;
  FreeWord w;
  w.syllables_ = std::move(rev);
  return w;
}

FreeWord FreeWord::commutator(const FreeWord& u, const FreeWord& v) {
  return u * v * u.inverse() * v.inverse();
}

FreeWord FreeWord::shift_letters(std::uint32_t shift) const {
  std::vector<Syllable> s = syllables_;
  for (auto& syl : s) syl.letter += shift;
  FreeWord w;
  w.syllables_ = std::move(s);
  return w;
}

std::string FreeWord::to_string() const {
  if (syllables_.empty()) return "1";
  std::string out;
  for (const auto& s : syllables_) {
    if (!out.empty()) out += ' ';
    out += "x" + std::to_string(s.letter);
    if (s.exponent != 1) out += "^" + std::to_string(s.exponent);
  }
  return out;
}

FreeWord FreeWord::parse(const std::string& text) {
  std::istringstream in(text);
  std::vector<Syllable> syllables;
  std::string tok;
  while (in >> tok) {
    if (tok == "1") continue;
    if (tok.empty() || tok[0] != 'x') throw ParseError("bad word token: " + tok);
    const auto caret = tok.find('^');
    try {
      const std::uint32_t letter =
          static_cast<std::uint32_t>(std::stoul(tok.substr(1, caret - 1)));
      long long e = 1;
      if (caret != std::string::npos) e = std::stoll(tok.substr(caret + 1));
      if (letter == 0) throw ParseError("letters are 1-based: " + tok);
      syllables.push_back({letter, e});
    } catch (const std::invalid_argument&) {
      throw ParseError("bad word token: " + tok);
    }
  }
  return FreeWord(std::move(syllables));
}

FreeWord word_nilpotent(unsigned k) {
  if (k < 1) throw ParseError("nil:k requires k >= 1");
  FreeWord w = FreeWord::commutator(FreeWord::letter(2), FreeWord::letter(1));
  for (unsigned i = 2; i <= k; ++i)
    w = FreeWord::commutator(FreeWord::letter(i + 1), w);
  return w;
}

FreeWord word_solvable(unsigned k, unsigned arity_cap) {
  if (k < 1) throw ParseError("sol:k requires k >= 1");
  if (k >= 32 || (1ULL << k) > arity_cap)
    throw ArityCapExceeded("sol:" + std::to_string(k) + " needs arity 2^k > cap");
  FreeWord w = FreeWord::commutator(FreeWord::letter(1), FreeWord::letter(2));
  for (unsigned i = 2; i <= k; ++i) {
    const std::uint32_t half = 1u << (i - 1);
    w = FreeWord::commutator(w, w.shift_letters(half));
  }
  return w;
}

FreeWord word_power(unsigned k) {
  if (k < 1) throw ParseError("burnside:k requires k >= 1");
  return FreeWord::letter(1, static_cast<long long>(k));
}

Elt evaluate(const FreeWord& w, const FiniteGroup& g,
             const std::vector<Elt>& tuple) {
  if (tuple.size() != w.arity())
    throw ArityMismatch("tuple length " + std::to_string(tuple.size()) +
                        " != arity " + std::to_string(w.arity()));
  Elt acc = 0;
  for (const auto& s : w.syllables())
    acc = g.mul(acc, g.pow(tuple[s.letter - 1], s.exponent));
  return acc;
}

WordSet WordSet::nilpotent(unsigned k) { return WordSet{Kind::nilpotent, k, {}}; }
WordSet WordSet::solvable(unsigned k) { return WordSet{Kind::solvable, k, {}}; }
WordSet WordSet::burnside(unsigned k) { return WordSet{Kind::burnside, k, {}}; }
WordSet WordSet::free_product() { return WordSet{Kind::free_product, 0, {}}; }
WordSet WordSet::explicit_words(std::vector<FreeWord> ws) {
  return WordSet{Kind::explicit_list, 0, std::move(ws)};
}

std::vector<FreeWord> WordSet::members() const {
  switch (kind) {
    case Kind::nilpotent:
      return {word_nilpotent(k)};
    case Kind::solvable:
      return {word_solvable(k)};
    case Kind::burnside:
      return {word_power(k)};
    case Kind::free_product:
      return {};
    case Kind::explicit_list:
      return words;
  }
  return {};
}

std::string WordSet::to_string() const {
  switch (kind) {
    case Kind::nilpotent:
      return "nil:" + std::to_string(k);
    case Kind::solvable:
      return "sol:" + std::to_string(k);
    case Kind::burnside:
      return "burnside:" + std::to_string(k);
    case Kind::free_product:
      return "free";
    case Kind::explicit_list: {
      std::string s = "explicit{";
      for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) s += "; ";
        s += words[i].to_string();
      }
      return s + "}";
    }
  }
  return "?";
}

WordSet WordSet::parse(const std::string& d) {
  if (d == "free") return free_product();
  const auto colon = d.find(':');
  if (colon != std::string::npos) {
    const std::string head = d.substr(0, colon);
    unsigned k = 0;
    try {
      const long v = std::stol(d.substr(colon + 1));
      if (v < 1) throw ParseError("word set needs k >= 1: " + d);
      k = static_cast<unsigned>(v);
    } catch (const std::invalid_argument&) {
      throw ParseError("bad word-set descriptor: " + d);
    }
    if (head == "nil") return nilpotent(k);
    if (head == "sol") return solvable(k);
    if (head == "burnside") return burnside(k);
  }
  throw ParseError("unknown word-set descriptor: " + d);
}

Subgroup verbal_subgroup_brute(const FiniteGroup& g, const WordSet& w,
                               unsigned long long budget) {
  std::vector<char> in_set(g.size(), 0);
  std::vector<Elt> values;
  for (const FreeWord& word : w.members()) {
    const std::uint32_t arity = word.arity();
    unsigned long long tuples = 1;
    for (std::uint32_t i = 0; i < arity; ++i) {
      tuples *= g.size();
      if (tuples > budget)
        throw BudgetExceeded("|G|^arity exceeds budget; use the specialized "
                             "series routine");
    }
    std::vector<Elt> tuple(arity, 0);
    while (true) {
      const Elt v = evaluate(word, g, tuple);
      if (!in_set[v]) {
        in_set[v] = 1;
        values.push_back(v);
      }
      std::size_t i = 0;
      for (; i < arity; ++i) {
        if (++tuple[i] < g.size()) break;
        tuple[i] = 0;
      }
      if (i == arity) break;
    }
  }
  return subgroup_generated(g, values);
}

namespace {

/// Subgroup generated by commutators [x, h], x in G, h in H.
Subgroup bracket(const FiniteGroup& g, const Subgroup& h) {
  std::vector<Elt> comms;
  for (Elt x = 0; x < g.size(); ++x)
    for (Elt y : h.members) comms.push_back(g.commutator(x, y));
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  return subgroup_generated(g, comms);
}

/// Commutators between two subgroups.
Subgroup bracket(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  std::vector<Elt> comms;
  for (Elt x : a.members)
    for (Elt y : b.members) comms.push_back(g.commutator(x, y));
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  return subgroup_generated(g, comms);
}

}  // namespace

Subgroup lower_central_series(const FiniteGroup& g, unsigned k) {
  Subgroup term = full_subgroup(g);  // gamma_1 = G
  for (unsigned i = 0; i < k; ++i) term = bracket(g, term);
  return term;  // gamma_{k+1}
}

Subgroup derived_series(const FiniteGroup& g, unsigned k) {
  Subgroup term = full_subgroup(g);
  for (unsigned i = 0; i < k; ++i) term = bracket(g, term, term);
  return term;
}

Subgroup power_subgroup(const FiniteGroup& g, unsigned k) {
  std::vector<Elt> powers;
  for (Elt x = 0; x < g.size(); ++x)
    powers.push_back(g.pow(x, static_cast<long long>(k)));
  std::sort(powers.begin(), powers.end());
  powers.erase(std::unique(powers.begin(), powers.end()), powers.end());
  return subgroup_generated(g, powers);
}

Subgroup verbal_subgroup(const FiniteGroup& g, const WordSet& w,
                         unsigned long long budget) {
  switch (w.kind) {
    case WordSet::Kind::nilpotent:
      return lower_central_series(g, w.k);
    case WordSet::Kind::solvable:
      return derived_series(g, w.k);
    case WordSet::Kind::burnside:
      return power_subgroup(g, w.k);
    case WordSet::Kind::free_product:
      return trivial_subgroup(g);
    case WordSet::Kind::explicit_list:
      return verbal_subgroup_brute(g, w, budget);
  }
  return trivial_subgroup(g);
}

unsigned nilpotency_class(const FiniteGroup& g) {
  Subgroup term = full_subgroup(g);
  unsigned c = 0;
  while (term.size() > 1) {
    const std::size_t before = term.size();
    term = bracket(g, term);
    ++c;
    if (term.size() == before)
      throw CheckFailed("group is not nilpotent: series stalls at order " +
                        std::to_string(before));
  }
  return c;
}

}  // namespace verbal
