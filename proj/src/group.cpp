#include "verbal/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

namespace verbal {

std::size_t default_cap() {
  if (const char* env = std::getenv("VERBALFORGE_CAP")) {
    const long v = std::atol(env);
    if (v > 0) return static_cast<std::size_t>(v);
  }
  return 200000;
}

FiniteGroup::FiniteGroup(std::vector<std::vector<Elt>> table,
                         std::vector<std::string> labels)
    : n_(table.size()) {
  if (n_ == 0) throw MalformedTable("empty multiplication table");
  if (n_ > default_cap())
    throw SizeCapExceeded("group of size " + std::to_string(n_) +
                          " exceeds cap " + std::to_string(default_cap()));
  table_.resize(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (table[i].size() != n_) throw MalformedTable("table is not square");
    for (std::size_t j = 0; j < n_; ++j) {
      if (table[i][j] >= n_) throw MalformedTable("table entry out of range");
      table_[i * n_ + j] = table[i][j];
    }
  }
  // identity at index 0
  for (std::size_t i = 0; i < n_; ++i) {
    if (table_[i] != i || table_[i * n_] != i)
      throw MalformedTable("index 0 is not a two-sided identity");
  }
  // inverses
  inv_.assign(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    bool found = false;
    for (std::size_t j = 0; j < n_; ++j) {
      if (table_[i * n_ + j] == 0) {
        if (table_[j * n_ + i] != 0)
          throw MalformedTable("one-sided inverse at " + std::to_string(i));
        inv_[i] = static_cast<Elt>(j);
        found = true;
        break;
      }
    }
    if (!found) throw MalformedTable("no inverse for " + std::to_string(i));
  }
  // associativity: exhaustive for small groups, sampled beyond
  if (n_ <= assoc_check_limit) {
    for (std::size_t a = 0; a < n_; ++a)
      for (std::size_t b = 0; b < n_; ++b)
        for (std::size_t c = 0; c < n_; ++c)
          if (mul(mul(static_cast<Elt>(a), static_cast<Elt>(b)),
                  static_cast<Elt>(c)) !=
              mul(static_cast<Elt>(a),
                  mul(static_cast<Elt>(b), static_cast<Elt>(c))))
            throw MalformedTable("associativity fails");
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<std::size_t> pick(0, n_ - 1);
    for (int t = 0; t < 200000; ++t) {
      const Elt a = static_cast<Elt>(pick(rng));
      const Elt b = static_cast<Elt>(pick(rng));
      const Elt c = static_cast<Elt>(pick(rng));
      if (mul(mul(a, b), c) != mul(a, mul(b, c)))
        throw MalformedTable("associativity fails");
    }
  }
  if (labels.empty()) {
    labels_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) labels_[i] = "g" + std::to_string(i);
  } else {
    if (labels.size() != n_) throw MalformedTable("label count mismatch");
    labels_ = std::move(labels);
  }
}

Elt FiniteGroup::pow(Elt x, long long e) const {
  if (e < 0) return pow(inv(x), -e);
  Elt acc = 0;
  Elt base = x;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

std::size_t FiniteGroup::order_of(Elt x) const {
  std::size_t k = 1;
  Elt acc = x;
  while (acc != 0) {
    acc = mul(acc, x);
    ++k;
  }
  return k;
}

std::size_t FiniteGroup::exponent() const {
  std::size_t e = 1;
  for (Elt x = 0; x < size(); ++x) e = std::lcm(e, order_of(x));
  return e;
}

bool FiniteGroup::is_abelian() const {
  for (Elt x = 0; x < size(); ++x)
    for (Elt y = x + 1; y < size(); ++y)
      if (mul(x, y) != mul(y, x)) return false;
  return true;
}

bool GroupHom::is_valid() const {
  if (!source || !target || image.size() != source->size()) return false;
  if (image[0] != 0) return false;
  for (Elt x = 0; x < source->size(); ++x)
    for (Elt y = 0; y < source->size(); ++y)
      if (image[source->mul(x, y)] != target->mul(image[x], image[y]))
        return false;
  return true;
}

std::vector<Elt> GroupHom::kernel() const {
  std::vector<Elt> k;
  for (Elt x = 0; x < source->size(); ++x)
    if (image[x] == 0) k.push_back(x);
  return k;
}

// --- constructors -----------------------------------------------------------

FiniteGroup cyclic_group(std::size_t n) {
  if (n < 1) throw MalformedTable("cyclic:n requires n >= 1");
  std::vector<std::vector<Elt>> t(n, std::vector<Elt>(n));
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    labels[i] = std::to_string(i);
    for (std::size_t j = 0; j < n; ++j) t[i][j] = static_cast<Elt>((i + j) % n);
  }
  return FiniteGroup(std::move(t), std::move(labels));
}

namespace {

std::vector<std::vector<Elt>> all_permutations(std::size_t n) {
  std::vector<Elt> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<Elt>> perms;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return perms;
}

std::string perm_label(const std::vector<Elt>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(p[i]);
  }
  return s + ")";
}

}  // namespace

FiniteGroup symmetric_group(std::size_t n) {
  if (n < 1) throw MalformedTable("sym:n requires n >= 1");
  std::size_t fact = 1;
  for (std::size_t i = 2; i <= n; ++i) {
    fact *= i;
    if (fact > default_cap())
      throw SizeCapExceeded("sym:" + std::to_string(n) + " exceeds cap");
  }
  const auto perms = all_permutations(n);  // lex order, identity first
  std::map<std::vector<Elt>, Elt> index;
  for (std::size_t i = 0; i < perms.size(); ++i)
    index[perms[i]] = static_cast<Elt>(i);
  std::vector<std::vector<Elt>> t(fact, std::vector<Elt>(fact));
  std::vector<std::string> labels(fact);
  for (std::size_t i = 0; i < fact; ++i) {
    labels[i] = perm_label(perms[i]);
    for (std::size_t j = 0; j < fact; ++j) {
      std::vector<Elt> prod(n);
      for (std::size_t k = 0; k < n; ++k) prod[k] = perms[i][perms[j][k]];
      t[i][j] = index.at(prod);
    }
  }
  return FiniteGroup(std::move(t), std::move(labels));
}

FiniteGroup dihedral_group(std::size_t n) {
  if (n < 1) throw MalformedTable("dihedral:n requires n >= 1");
  // indices 0..n-1 rotations r^i, n..2n-1 reflections s r^i
  const std::size_t m = 2 * n;
  auto code = [n](bool s, std::size_t r) {
    return static_cast<Elt>((s ? n : 0) + r);
  };
  std::vector<std::vector<Elt>> t(m, std::vector<Elt>(m));
  std::vector<std::string> labels(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool si = i >= n;
    const std::size_t ri = i % n;
    labels[i] = (si ? "sr" : "r") + std::to_string(ri);
    for (std::size_t j = 0; j < m; ++j) {
      const bool sj = j >= n;
      const std::size_t rj = j % n;
      // (s^a r^i)(s^b r^j) = s^(a+b) r^(j +- i)
      const std::size_t r = sj ? (rj + n - ri) % n : (ri + rj) % n;
      t[i][j] = code(si != sj, r);
    }
  }
  return FiniteGroup(std::move(t), std::move(labels));
}

FiniteGroup klein_four_group() {
  std::vector<std::vector<Elt>> t(4, std::vector<Elt>(4));
  for (Elt i = 0; i < 4; ++i)
    for (Elt j = 0; j < 4; ++j) t[i][j] = i ^ j;
  return FiniteGroup(std::move(t), {"1", "a", "b", "ab"});
}

FiniteGroup group_from_table_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open table file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad JSON in " + path + ": " + e.what());
  }
  if (!j.contains("n") || !j.contains("table"))
    throw ParseError("table file needs fields n, table");
  const std::size_t n = j["n"].get<std::size_t>();
  auto rows = j["table"].get<std::vector<std::vector<Elt>>>();
  if (rows.size() != n) throw MalformedTable("n does not match table rows");
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
  return FiniteGroup(std::move(rows), std::move(labels));
}

FiniteGroup make_group(const std::string& descriptor) {
  const auto colon = descriptor.find(':');
  const std::string head = descriptor.substr(0, colon);
  const std::string arg =
      colon == std::string::npos ? "" : descriptor.substr(colon + 1);
  auto numeric = [&](const std::string& s) -> std::size_t {
    try {
      const long v = std::stol(s);
      if (v < 1) throw ParseError("descriptor needs a positive count: " + descriptor);
      return static_cast<std::size_t>(v);
    } catch (const std::invalid_argument&) {
      throw ParseError("bad group descriptor: " + descriptor);
    }
  };
  if (head == "cyclic") return cyclic_group(numeric(arg));
  if (head == "sym") return symmetric_group(numeric(arg));
  if (head == "dihedral") return dihedral_group(numeric(arg));
  if (head == "klein4" && arg.empty()) return klein_four_group();
  if (head == "table") return group_from_table_file(arg);
  throw ParseError("unknown group descriptor: " + descriptor);
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t n = a.size() * b.size();
  if (n > default_cap()) throw SizeCapExceeded("direct product exceeds cap");
  std::vector<std::vector<Elt>> t(n, std::vector<Elt>(n));
  std::vector<std::string> labels(n);
  auto code = [&](Elt x, Elt y) { return static_cast<Elt>(x * b.size() + y); };
  for (Elt x1 = 0; x1 < a.size(); ++x1)
    for (Elt y1 = 0; y1 < b.size(); ++y1) {
      labels[code(x1, y1)] = "(" + a.label(x1) + "," + b.label(y1) + ")";
      for (Elt x2 = 0; x2 < a.size(); ++x2)
        for (Elt y2 = 0; y2 < b.size(); ++y2)
          t[code(x1, y1)][code(x2, y2)] = code(a.mul(x1, x2), b.mul(y1, y2));
    }
  return FiniteGroup(std::move(t), std::move(labels));
}

FiniteGroup direct_product(const std::vector<const FiniteGroup*>& factors) {
  if (factors.empty()) return cyclic_group(1);
  FiniteGroup acc = *factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i)
    acc = direct_product(acc, *factors[i]);
  return acc;
}

// --- subgroup machinery ------------------------------------------------------

namespace {

Subgroup make_subgroup(const FiniteGroup& g, std::vector<char> mask) {
  Subgroup s;
  s.parent = &g;
  s.mask = std::move(mask);
  for (Elt x = 0; x < g.size(); ++x)
    if (s.mask[x]) s.members.push_back(x);
  return s;
}

}  // namespace

Subgroup subgroup_generated(const FiniteGroup& g, const std::vector<Elt>& gens) {
  std::vector<char> mask(g.size(), 0);
  std::deque<Elt> queue;
  auto add = [&](Elt x) {
    if (!mask[x]) {
      mask[x] = 1;
      queue.push_back(x);
    }
  };
  add(0);
  for (Elt x : gens) add(x);
  std::vector<Elt> seed = gens;
  while (!queue.empty()) {
    const Elt x = queue.front();
    queue.pop_front();
    add(g.inv(x));
    for (Elt y = 0; y < g.size(); ++y) {
      if (!mask[y]) continue;
      add(g.mul(x, y));
      add(g.mul(y, x));
    }
  }
  return make_subgroup(g, std::move(mask));
}

Subgroup normal_closure(const FiniteGroup& g, const std::vector<Elt>& gens) {
  std::vector<Elt> conjugates;
  for (Elt s : gens)
    for (Elt x = 0; x < g.size(); ++x) conjugates.push_back(g.conj(x, s));
  std::sort(conjugates.begin(), conjugates.end());
  conjugates.erase(std::unique(conjugates.begin(), conjugates.end()),
                   conjugates.end());
  return subgroup_generated(g, conjugates);
}

bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  for (Elt s : h.members)
    for (Elt x = 0; x < g.size(); ++x)
      if (!h.contains(g.conj(x, s))) return false;
  return true;
}

Subgroup commutator_subgroup(const FiniteGroup& g) {
  std::vector<Elt> comms;
  for (Elt x = 0; x < g.size(); ++x)
    for (Elt y = 0; y < g.size(); ++y) comms.push_back(g.commutator(x, y));
  std::sort(comms.begin(), comms.end());
  comms.erase(std::unique(comms.begin(), comms.end()), comms.end());
  return subgroup_generated(g, comms);
}

Subgroup trivial_subgroup(const FiniteGroup& g) {
  std::vector<char> mask(g.size(), 0);
  mask[0] = 1;
  return make_subgroup(g, std::move(mask));
}

Subgroup full_subgroup(const FiniteGroup& g) {
  return make_subgroup(g, std::vector<char>(g.size(), 1));
}

QuotientResult quotient(const FiniteGroup& g, const Subgroup& n) {
  if (n.parent != &g) throw NotNormal("subgroup belongs to another group");
  if (!is_normal(g, n)) throw NotNormal("subgroup is not normal");
  // canonical coset representative: minimal element of the coset
  std::vector<Elt> coset_of(g.size(), 0);
  std::vector<Elt> reps;
  std::vector<char> seen(g.size(), 0);
  for (Elt x = 0; x < g.size(); ++x) {
    if (seen[x]) continue;
    const Elt rep_index = static_cast<Elt>(reps.size());
    reps.push_back(x);
    for (Elt s : n.members) {
      const Elt y = g.mul(x, s);
      seen[y] = 1;
      coset_of[y] = rep_index;
    }
  }
  const std::size_t q = reps.size();
  std::vector<std::vector<Elt>> t(q, std::vector<Elt>(q));
  std::vector<std::string> labels(q);
  for (std::size_t i = 0; i < q; ++i) {
    labels[i] = "[" + g.label(reps[i]) + "]";
    for (std::size_t j = 0; j < q; ++j)
      t[i][j] = coset_of[g.mul(reps[i], reps[j])];
  }
  return {FiniteGroup(std::move(t), std::move(labels)), std::move(coset_of)};
}

std::vector<std::vector<Elt>> regular_representation(const FiniteGroup& g) {
  std::vector<std::vector<Elt>> images(g.size(), std::vector<Elt>(g.size()));
  for (Elt x = 0; x < g.size(); ++x)
    for (Elt y = 0; y < g.size(); ++y) images[x][y] = g.mul(x, y);
  return images;
}

std::vector<Elt> small_generating_set(const FiniteGroup& g) {
  std::vector<Elt> gens;
  Subgroup h = trivial_subgroup(g);
  while (h.size() < g.size()) {
    for (Elt x = 1; x < g.size(); ++x) {
      if (!h.contains(x)) {
        gens.push_back(x);
        h = subgroup_generated(g, gens);
        break;
      }
    }
  }
  return gens;
}

std::optional<GroupHom> hom_from_generator_images(
    const FiniteGroup& src, const FiniteGroup& tgt, const std::vector<Elt>& gens,
    const std::vector<Elt>& images) {
  // spread images through a BFS over products; any inconsistency kills it
  constexpr Elt unset = static_cast<Elt>(-1);
  std::vector<Elt> img(src.size(), unset);
  img[0] = 0;
  std::deque<Elt> queue{0};
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (img[gens[i]] != unset && img[gens[i]] != images[i]) return std::nullopt;
    if (img[gens[i]] == unset) {
      img[gens[i]] = images[i];
      queue.push_back(gens[i]);
    }
  }
  while (!queue.empty()) {
    const Elt x = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Elt y = src.mul(x, gens[i]);
      const Elt v = tgt.mul(img[x], images[i]);
      if (img[y] == unset) {
        img[y] = v;
        queue.push_back(y);
      } else if (img[y] != v) {
        return std::nullopt;
      }
    }
  }
  for (Elt x = 0; x < src.size(); ++x)
    if (img[x] == unset) return std::nullopt;  // gens do not generate
  GroupHom hom{&src, &tgt, std::move(img)};
  if (!hom.is_valid()) return std::nullopt;
  return hom;
}

std::vector<GroupHom> all_endomorphisms(const FiniteGroup& g) {
  const auto gens = small_generating_set(g);
  std::vector<GroupHom> result;
  std::vector<Elt> choice(gens.size(), 0);
  while (true) {
    if (auto hom = hom_from_generator_images(g, g, gens, choice))
      result.push_back(std::move(*hom));
    // odometer over |G|^#gens image choices
    std::size_t i = 0;
    for (; i < choice.size(); ++i) {
      if (++choice[i] < g.size()) break;
      choice[i] = 0;
    }
    if (i == choice.size()) break;
  }
  return result;
}

}  // namespace verbal
