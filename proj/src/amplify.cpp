#include "verbal/amplify.hpp"

#include <algorithm>
#include <set>

namespace verbal {

namespace {

std::string brief(const WreathElement& z) {
  std::string s = "(h=" + std::to_string(z.h) + ";";
  for (Elt c : z.x.comp) s += std::to_string(c);
  return s + ")";
}

template <class T>
void sort_unique(std::vector<T>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

SetsLedger derive_sets(const VerbalWreathGroup& wr,
                       const std::vector<WreathElement>& f) {
  SetsLedger led;
  led.f0 = f;
  led.f0.push_back(wr.one());
  for (const WreathElement& z : f) led.f0.push_back(wr.inverse(z));
  sort_unique(led.f0);

  for (const WreathElement& z : led.f0) {
    led.proj_g.push_back(z.x);
    led.e2.push_back(z.h);
  }
  sort_unique(led.proj_g);
  sort_unique(led.e2);

  for (Elt h : led.e2)
    for (const NfoldElt& x : led.proj_g) led.e1.push_back(wr.act(h, x));
  sort_unique(led.e1);

  for (const NfoldElt& y : led.proj_g)
    for (Elt h : led.e2)
      for (const NfoldElt& x : led.proj_g)
        led.e1_tilde.push_back(wr.base().multiply(y, wr.act(h, x)));
  sort_unique(led.e1_tilde);

  for (const NfoldElt& x : led.e1)
    for (Elt h : wr.support(x)) led.supp_e1.push_back(h);
  sort_unique(led.supp_e1);

  led.e = led.e2;
  for (Elt h : led.e2)
    for (Elt s : led.supp_e1) led.e.push_back(wr.H().mul(h, s));
  sort_unique(led.e);

  for (Elt x : led.e)
    for (Elt y : led.e) led.e_h.push_back(wr.H().mul(x, wr.H().inv(y)));
  sort_unique(led.e_h);

  led.in_e.assign(wr.H().size(), 0);
  for (Elt h : led.e) led.in_e[h] = 1;
  return led;
}

SigmaMap regular_sigma(const FiniteGroup& h, std::size_t copies) {
  SigmaMap s;
  s.points = h.size() * copies;
  s.image.resize(h.size());
  for (Elt g = 0; g < h.size(); ++g) {
    Perm p = Perm::identity(s.points);
    for (std::size_t c = 0; c < copies; ++c)
      for (Elt i = 0; i < h.size(); ++i)
        p.img[c * h.size() + i] = static_cast<Elt>(c * h.size() + h.mul(g, i));
    s.image[g] = std::move(p);
  }
  return s;
}

void perturb_images(std::vector<Perm>& images, std::size_t skip_index,
                    double rate, std::mt19937_64& rng) {
  if (images.empty()) return;
  const std::size_t degree = images[0].degree();
  const std::size_t swaps = static_cast<std::size_t>(rate * degree);
  std::uniform_int_distribution<std::size_t> pick(0, degree - 1);
  for (std::size_t g = 0; g < images.size(); ++g) {
    if (g == skip_index) continue;
    for (std::size_t s = 0; s < swaps; ++s) {
      const std::size_t i = pick(rng), j = pick(rng);
      std::swap(images[g].img[i], images[g].img[j]);
    }
  }
}

BSets compute_be(const SigmaMap& sigma, const FiniteGroup& h,
                 const std::vector<Elt>& e) {
  BSets out;
  const std::size_t nb = sigma.points;
  out.b1.assign(nb, 1);
  out.b2.assign(nb, 1);
  out.be.assign(nb, 0);
  std::vector<Perm> inv(h.size());
  for (Elt x : e) inv[x] = sigma.image[x].inverse();
  for (std::size_t b = 0; b < nb; ++b) {
    for (std::size_t i = 0; i < e.size() && out.b1[b]; ++i)
      for (std::size_t j = i + 1; j < e.size(); ++j)
        if (inv[e[i]].img[b] == inv[e[j]].img[b]) {
          out.b1[b] = 0;
          break;
        }
    for (std::size_t i = 0; i < e.size() && out.b2[b]; ++i)
      for (std::size_t j = 0; j < e.size(); ++j) {
        const Elt h1 = e[i], h2 = e[j];
        const Elt prod = h.mul(h2, h1);
        // sigma(h2 h1)^-1 b = sigma(h1)^-1 sigma(h2)^-1 b
        const Elt lhs = sigma.image[prod].inverse().img[b];
        const Elt rhs = inv[h1].img[inv[h2].img[b]];
        if (lhs != rhs) {
          out.b2[b] = 0;
          break;
        }
      }
    out.be[b] = out.b1[b] && out.b2[b];
    if (out.be[b]) ++out.be_count;
  }
  out.excluded_ratio = Rat(static_cast<long long>(nb - out.be_count),
                           static_cast<long long>(nb));
  return out;
}

AmplificationConfig auto_config(const Rat& epsilon, std::size_t e_size) {
  AmplificationConfig c;
  c.epsilon = epsilon;
  c.kappa = epsilon / 24;
  const long long e2 = static_cast<long long>(e_size) * e_size;
  c.epsilon_prime = c.kappa / Rat(8 * e2);
  return c;
}

void validate_config(const AmplificationConfig& c, std::size_t e_size) {
  if (c.epsilon <= Rat(0)) throw CheckFailed("epsilon must be positive");
  if (!(c.kappa < c.epsilon / 12))
    throw CheckFailed("config violates kappa < epsilon/12");
  const long long e2 = static_cast<long long>(e_size) * e_size;
  if (!(c.epsilon_prime < c.kappa / Rat(4 * e2)))
    throw CheckFailed("config violates epsilon' < kappa/(4|E|^2)");
}

NfoldElt theta_b(const VerbalWreathGroup& wr, const NfoldProduct& over_b,
                 const SigmaMap& sigma, const std::vector<char>& in_e, Elt b,
                 const NfoldElt& x) {
  std::vector<std::optional<std::size_t>> index_map(wr.H().size());
  for (Elt h = 0; h < wr.H().size(); ++h) {
    if (!in_e[h]) continue;
    index_map[h] = sigma.image[h].inverse().img[b];
  }
  auto moved = wr.base().push_forward(over_b, index_map, x);
  if (!moved) return over_b.one();  // outside the E-power, extend by 1
  return *moved;
}

std::vector<WreathElement> window_generators(const VerbalWreathGroup& wr) {
  std::vector<WreathElement> f;
  for (Elt g = 0; g < wr.G().size(); ++g) f.push_back(wr.embed_g(g));
  for (Elt h = 0; h < wr.H().size(); ++h) f.push_back(wr.embed_h(h));
  sort_unique(f);
  return f;
}

AmplifyInstance make_instance(const FiniteGroup& g, const FiniteGroup& h,
                              const WordSet& w,
                              const std::vector<WreathElement>& f,
                              const Rat& epsilon, std::size_t b_copies,
                              std::optional<Rat> kappa,
                              std::optional<Rat> epsilon_prime) {
  AmplifyInstance inst;
  inst.wr = std::make_shared<VerbalWreathGroup>(g, h, w);
  inst.window = f;
  inst.ledger = derive_sets(*inst.wr, f);
  inst.window = inst.ledger.f0;
  inst.sigma = regular_sigma(h, b_copies);
  inst.over_b = std::make_shared<NfoldProduct>(g, inst.sigma.points, w);
  inst.base_elements = inst.over_b->elements();
  for (std::size_t i = 0; i < inst.base_elements.size(); ++i)
    inst.base_index[inst.base_elements[i]] = static_cast<Elt>(i);
  inst.config = auto_config(epsilon, inst.ledger.e.size());
  if (kappa) inst.config.kappa = *kappa;
  if (epsilon_prime) inst.config.epsilon_prime = *epsilon_prime;
  validate_config(inst.config, inst.ledger.e.size());
  refresh_sigma_dependents(inst);
  return inst;
}

void refresh_sigma_dependents(AmplifyInstance& inst) {
  inst.bsets = compute_be(inst.sigma, inst.wr->H(), inst.ledger.e);
  inst.e_g.clear();
  for (std::size_t b = 0; b < inst.sigma.points; ++b) {
    if (!inst.bsets.be[b]) continue;
    for (const NfoldElt& x : inst.ledger.e1)
      inst.e_g.push_back(theta_b(*inst.wr, *inst.over_b, inst.sigma,
                                 inst.ledger.in_e, static_cast<Elt>(b), x));
  }
  std::sort(inst.e_g.begin(), inst.e_g.end());
  inst.e_g.erase(std::unique(inst.e_g.begin(), inst.e_g.end()), inst.e_g.end());
}

PhiMap regular_phi(const AmplifyInstance& inst) {
  PhiMap phi;
  const std::size_t n = inst.base_elements.size();
  phi.image.resize(n);
  for (std::size_t g = 0; g < n; ++g) {
    Perm p = Perm::identity(n);
    for (std::size_t x = 0; x < n; ++x)
      p.img[x] = inst.base_index.at(
          inst.over_b->multiply(inst.base_elements[g], inst.base_elements[x]));
    phi.image[g] = std::move(p);
  }
  return phi;
}

namespace {

/// Per-point data of Gamma(z): for each b, the target point and the phi
/// image acting on the A-block (identity when outside B_E).
struct GammaBlocks {
  std::vector<Elt> target;          // b -> sigma(h) b
  std::vector<const Perm*> block;   // b -> phi(theta_{sigma(h)b}(x)) or null
};

GammaBlocks gamma_blocks(const AmplifyInstance& inst, const PhiMap& phi,
                         const WreathElement& z) {
  GammaBlocks gb;
  const std::size_t nb = inst.sigma.points;
  gb.target.resize(nb);
  gb.block.assign(nb, nullptr);
  for (std::size_t b = 0; b < nb; ++b) {
    const Elt tb = inst.sigma.image[z.h].img[b];
    gb.target[b] = tb;
    if (inst.bsets.be[tb]) {
      const NfoldElt th = theta_b(*inst.wr, *inst.over_b, inst.sigma,
                                  inst.ledger.in_e, tb, z.x);
      gb.block[b] = &phi.image[inst.base_index.at(th)];
    }
  }
  return gb;
}

}  // namespace

Perm gamma_sofic(const AmplifyInstance& inst, const PhiMap& phi,
                 const WreathElement& z) {
  const std::size_t na = inst.base_elements.size();
  const std::size_t nb = inst.sigma.points;
  const GammaBlocks gb = gamma_blocks(inst, phi, z);
  Perm out = Perm::identity(na * nb);
  for (std::size_t b = 0; b < nb; ++b) {
    const Elt tb = gb.target[b];
    for (std::size_t a = 0; a < na; ++a) {
      const Elt ta = gb.block[b] ? gb.block[b]->img[a] : static_cast<Elt>(a);
      out.img[b * na + a] = static_cast<Elt>(tb * na + ta);
    }
  }
  return out;
}

WreathMetricElement gamma_weak(const AmplifyInstance& inst, const PhiMap& phi,
                               const WreathElement& z) {
  const std::size_t na = inst.base_elements.size();
  const std::size_t nb = inst.sigma.points;
  WreathMetricElement out = wreath_metric_identity(nb, na);
  out.tau = inst.sigma.image[z.h];
  for (std::size_t b = 0; b < nb; ++b) {
    const Elt tb = inst.sigma.image[z.h].img[b];
    if (!inst.bsets.be[tb]) continue;
    const NfoldElt th = theta_b(*inst.wr, *inst.over_b, inst.sigma,
                                inst.ledger.in_e, tb, z.x);
    out.comps[b] = phi.image[inst.base_index.at(th)];
  }
  return out;
}

MatD gamma_hyper(const AmplifyInstance& inst, const PhiMap& phi,
                 const WreathElement& z) {
  const std::size_t na = inst.base_elements.size();
  const std::size_t nb = inst.sigma.points;
  const GammaBlocks gb = gamma_blocks(inst, phi, z);
  MatD m{na * nb, std::vector<double>(na * nb * na * nb, 0.0)};
  for (std::size_t b = 0; b < nb; ++b) {
    const Elt tb = gb.target[b];
    for (std::size_t a = 0; a < na; ++a) {
      const Elt ta = gb.block[b] ? gb.block[b]->img[a] : static_cast<Elt>(a);
      m.at(tb * na + ta, b * na + a) = 1.0;
    }
  }
  return m;
}

MatFp gamma_linear(const AmplifyInstance& inst, const PhiMap& phi, long long p,
                   const WreathElement& z) {
  const std::size_t na = inst.base_elements.size();
  const std::size_t nb = inst.sigma.points;
  const GammaBlocks gb = gamma_blocks(inst, phi, z);
  MatFp m{na * nb, p, std::vector<long long>(na * nb * na * nb, 0)};
  for (std::size_t b = 0; b < nb; ++b) {
    const Elt tb = gb.target[b];
    for (std::size_t a = 0; a < na; ++a) {
      const Elt ta = gb.block[b] ? gb.block[b]->img[a] : static_cast<Elt>(a);
      m.at(tb * na + ta, b * na + a) = 1;
    }
  }
  return m;
}

DefectReport measure_sofic(const AmplifyInstance& inst, const PhiMap& phi,
                           const std::vector<WreathElement>& window) {
  SymHamming carrier{inst.base_elements.size() * inst.sigma.points};
  return measure_defects(
      "sofic", window, inst.wr->one(),
      [&](const WreathElement& a, const WreathElement& b) {
        return inst.wr->multiply(a, b);
      },
      [&](const WreathElement& z) { return gamma_sofic(inst, phi, z); }, carrier,
      brief);
}

DefectReport measure_weak(const AmplifyInstance& inst, const PhiMap& phi,
                          const std::vector<WreathElement>& window) {
  WreathHamming carrier{inst.sigma.points, inst.base_elements.size()};
  return measure_defects(
      "weak-sofic", window, inst.wr->one(),
      [&](const WreathElement& a, const WreathElement& b) {
        return inst.wr->multiply(a, b);
      },
      [&](const WreathElement& z) { return gamma_weak(inst, phi, z); }, carrier,
      brief);
}

DefectReport measure_hyper(const AmplifyInstance& inst, const PhiMap& phi,
                           const std::vector<WreathElement>& window) {
  UnitaryHS carrier{inst.base_elements.size() * inst.sigma.points, 1e-9};
  auto rep = measure_defects(
      "hyperlinear", window, inst.wr->one(),
      [&](const WreathElement& a, const WreathElement& b) {
        return inst.wr->multiply(a, b);
      },
      [&](const WreathElement& z) {
        MatD m = gamma_hyper(inst, phi, z);
        check_unitary(m, carrier.tol);
        return m;
      },
      carrier, brief);
  return rep;
}

DefectReport measure_linear(const AmplifyInstance& inst, const PhiMap& phi,
                            long long p,
                            const std::vector<WreathElement>& window) {
  GLRank carrier{inst.base_elements.size() * inst.sigma.points, p};
  return measure_defects(
      "linear-sofic", window, inst.wr->one(),
      [&](const WreathElement& a, const WreathElement& b) {
        return inst.wr->multiply(a, b);
      },
      [&](const WreathElement& z) { return gamma_linear(inst, phi, p, z); },
      carrier, brief);
}

namespace {

template <class Carrier, class GammaFn>
QuasiMultReport quasi_mult_impl(const AmplifyInstance& inst, const Carrier& carrier,
                           GammaFn&& gamma, const Rat& epsilon) {
  QuasiMultReport rep;
  rep.epsilon = epsilon;
  const Rat sixth = epsilon / 6;
  const auto& wr = *inst.wr;
  const auto& led = inst.ledger;

  auto G = [&](const NfoldElt& x, Elt h) {
    return gamma(WreathElement{x, h});
  };
  const NfoldElt base_one = wr.base().one();

  // (i) restriction to the base is (E1, eps/6)-multiplicative
  Rat m1(0);
  for (const NfoldElt& x : led.e1)
    for (const NfoldElt& y : led.e1)
      m1 = std::max(m1, carrier.dist(carrier.mul(G(x, 0), G(y, 0)),
                                     G(wr.base().multiply(x, y), 0)));
  // (ii) restriction to H is (E2, eps/6)-multiplicative
  Rat m2(0);
  for (Elt h : led.e2)
    for (Elt hp : led.e2)
      m2 = std::max(m2, carrier.dist(carrier.mul(G(base_one, h), G(base_one, hp)),
                                     G(base_one, wr.H().mul(h, hp))));
  // (iii) Gamma(x,1)Gamma(1,h) vs Gamma(x,h) over E1~ x E2 E2
  std::vector<Elt> e2e2;
  for (Elt h : led.e2)
    for (Elt hp : led.e2) e2e2.push_back(wr.H().mul(h, hp));
  sort_unique(e2e2);
  Rat m3(0);
  for (const NfoldElt& x : led.e1_tilde)
    for (Elt h : e2e2)
      m3 = std::max(m3, carrier.dist(carrier.mul(G(x, 0), G(base_one, h)),
                                     G(x, h)));
  // (iv) Gamma(1,h)Gamma(x,1) vs Gamma(alpha_h(x),1)Gamma(1,h)
  Rat m4(0);
  for (const NfoldElt& x : led.proj_g)
    for (Elt h : led.e2)
      m4 = std::max(m4,
                    carrier.dist(carrier.mul(G(base_one, h), G(x, 0)),
                                 carrier.mul(G(wr.act(h, x), 0), G(base_one, h))));

  rep.premise = {m1, m2, m3, m4};
  for (int i = 0; i < 4; ++i) {
    rep.premise_pass[i] = rep.premise[i] < sixth;
    if (!rep.premise_pass[i]) rep.any_premise_failed = true;
  }
  // conclusion measured independently over F0 x F0
  Rat conc(0);
  for (const WreathElement& z : led.f0)
    for (const WreathElement& zp : led.f0)
      conc = std::max(conc, carrier.dist(carrier.mul(gamma(z), gamma(zp)),
                                         gamma(wr.multiply(z, zp))));
  rep.conclusion = conc;
  rep.conclusion_pass = conc < epsilon;
  rep.implication_holds = rep.any_premise_failed || rep.conclusion_pass;
  return rep;
}

}  // namespace

QuasiMultReport check_quasi_mult_sofic(const AmplifyInstance& inst, const PhiMap& phi,
                                  const Rat& epsilon) {
  SymHamming carrier{inst.base_elements.size() * inst.sigma.points};
  return quasi_mult_impl(
      inst, carrier,
      [&](const WreathElement& z) { return gamma_sofic(inst, phi, z); }, epsilon);
}

QuasiMultReport check_quasi_mult_weak(const AmplifyInstance& inst, const PhiMap& phi,
                                 const Rat& epsilon) {
  WreathHamming carrier{inst.sigma.points, inst.base_elements.size()};
  return quasi_mult_impl(
      inst, carrier,
      [&](const WreathElement& z) { return gamma_weak(inst, phi, z); }, epsilon);
}

QuasiMultReport check_quasi_mult_linear(const AmplifyInstance& inst, const PhiMap& phi,
                                   long long p, const Rat& epsilon) {
  GLRank carrier{inst.base_elements.size() * inst.sigma.points, p};
  return quasi_mult_impl(
      inst, carrier,
      [&](const WreathElement& z) { return gamma_linear(inst, phi, p, z); },
      epsilon);
}

KappaReport kappa_check(const FiniteGroup& h, const SigmaMap& sigma,
                        const std::vector<Elt>& e) {
  KappaReport rep;
  rep.e_size = e.size();
  std::vector<Elt> eh;
  for (Elt x : e)
    for (Elt y : e) eh.push_back(h.mul(x, h.inv(y)));
  sort_unique(eh);

  // measured defect of sigma on E_H: sofic needs mult < eps' and free >= 1-eps'
  Rat mult(0), free_min(1);
  for (Elt x : eh)
    for (Elt y : eh)
      mult = std::max(mult, hamming_dist(sigma.image[x] * sigma.image[y],
                                         sigma.image[h.mul(x, y)]));
  for (Elt x : eh) {
    if (x == 0) continue;
    free_min = std::min(free_min,
                        hamming_dist(sigma.image[x],
                                     Perm::identity(sigma.points)));
  }
  rep.sofic_defect = std::max(mult, Rat(1) - free_min);
  // the smallest admissible parameters for this sigma
  const Rat delta(1, 1000000);
  rep.epsilon_prime = rep.sofic_defect + delta;
  const long long e2 = static_cast<long long>(e.size()) * e.size();
  rep.kappa = rep.epsilon_prime * Rat(4 * e2) + delta;

  const BSets bs = compute_be(sigma, h, e);
  rep.ratio = bs.excluded_ratio;
  rep.holds = rep.ratio <= rep.kappa;
  return rep;
}

CounterexampleReport coordinatewise_counterexample(unsigned p) {
  if (p < 3 || p > 13 || p % 2 == 0)
    throw CheckFailed("counterexample needs an odd prime 3 <= p <= 13");
  CounterexampleReport rep;
  rep.p = p;

  const FiniteGroup zp = cyclic_group(p);
  auto prod = BinaryVerbalProduct::build(zp, zp, WordSet::nilpotent(2));
  // cartesian part is Z/p: witnesses are its nontrivial elements
  std::vector<NormalForm> witnesses;
  for (long long t = 1; t < prod.tensor().order(); ++t)
    witnesses.push_back(NormalForm{0, 0, prod.tensor().element_at(t)});
  rep.witnesses = witnesses.size();

  // the p-cycle representation of Z/p inside Sym(p)
  const std::size_t np = p;
  auto theta = [&](Elt a) {
    Perm s = Perm::identity(np);
    for (std::size_t i = 0; i < np; ++i)
      s.img[i] = static_cast<Elt>((i + a) % np);
    return s;
  };
  // coordinate-wise map into Sym(p) + Sym(p) acting diagonally on p x p
  auto coordwise = [&](const NormalForm& f) {
    Perm s = Perm::identity(np * np);
    const Perm sa = theta(f.a), sb = theta(f.b);
    for (std::size_t x = 0; x < np; ++x)
      for (std::size_t y = 0; y < np; ++y)
        s.img[x * np + y] = static_cast<Elt>(sa.img[x] * np + sb.img[y]);
    return s;
  };
  Rat coord_free(1);
  const Perm big_id = Perm::identity(np * np);
  for (const NormalForm& w : witnesses)
    coord_free = std::min(coord_free, hamming_dist(coordwise(w), big_id));
  rep.coordwise_free_defect = coord_free;

  // the quotient-induced map into Sym(p) nil2 Sym(p) kills the cartesian
  // part because Z/p -> Z/2 abelianization transport is trivial for odd p
  const FiniteGroup sp = symmetric_group(p);
  Elt pcycle = 0;
  for (Elt x = 1; x < sp.size(); ++x)
    if (sp.order_of(x) == p) {
      pcycle = x;
      break;
    }
  auto hom = hom_from_generator_images(zp, sp, {1}, {pcycle});
  if (!hom) throw CheckFailed("p-cycle does not define a homomorphism");
  auto target = BinaryVerbalProduct::build(sp, sp, WordSet::nilpotent(2));
  rep.quotient_kills_cartesian = true;
  for (const NormalForm& w : witnesses) {
    const NormalForm img =
        map_through_factor_homs(prod, target, hom->image, hom->image, w);
    if (!(img == target.one())) rep.quotient_kills_cartesian = false;
  }

  // contrast: the exact regular representation of the full product
  const MaterializedProduct m = materialize(prod);
  Rat exact_free(1);
  const Perm reg_id = Perm::identity(m.group.size());
  for (const NormalForm& w : witnesses) {
    Perm s = Perm::identity(m.group.size());
    const Elt g = m.index_of.at(w);
    for (Elt x = 0; x < m.group.size(); ++x) s.img[x] = m.group.mul(g, x);
    exact_free = std::min(exact_free, hamming_dist(s, reg_id));
  }
  rep.exact_free_defect = exact_free;
  return rep;
}

}  // namespace verbal
