#pragma once

#include <array>
#include <memory>
#include <optional>
#include <random>

#include "verbal/metric.hpp"
#include "verbal/product.hpp"
#include "verbal/wreath.hpp"

namespace verbal {

/// The derived window sets of the amplification construction. H-side sets
/// are element lists of H; base-side sets are elements of the H-indexed
/// verbal power.
struct SetsLedger {
  std::vector<WreathElement> f0;    // F with 1 and inverses adjoined
  std::vector<NfoldElt> proj_g;     // base projections of F0
  std::vector<Elt> e2;              // proj_H(F0)
  std::vector<NfoldElt> e1;         // {alpha_h(x)}
  std::vector<NfoldElt> e1_tilde;   // {y alpha_h(x)}
  std::vector<Elt> supp_e1;         // union of supports, subset of H
  std::vector<Elt> e;               // E2 u E2 supp(E1)
  std::vector<Elt> e_h;             // E E^-1
  std::vector<char> in_e;           // mask over H
};

SetsLedger derive_sets(const VerbalWreathGroup& wr,
                       const std::vector<WreathElement>& f);

/// A finite-window map H -> Sym(B); image[0] is always the identity.
struct SigmaMap {
  std::size_t points = 0;
  std::vector<Perm> image;
};

/// Block-diagonal sum of `copies` left-regular representations
/// (B = H x {0..copies-1}); exact and fixed-point-free.
SigmaMap regular_sigma(const FiniteGroup& h, std::size_t copies = 1);

/// Composes every image except the skipped index with floor(rate * degree)
/// random transpositions. Deterministic under a fixed generator state.
void perturb_images(std::vector<Perm>& images, std::size_t skip_index,
                    double rate, std::mt19937_64& rng);

/// The pointwise-exactness sets of the H-approximation.
struct BSets {
  std::vector<char> b1, b2, be;
  std::size_t be_count = 0;
  Rat excluded_ratio{0};  // |B \ B_E| / |B|
};
BSets compute_be(const SigmaMap& sigma, const FiniteGroup& h,
                 const std::vector<Elt>& e);

struct AmplificationConfig {
  Rat epsilon;
  Rat kappa;
  Rat epsilon_prime;
};
/// kappa = epsilon/24, epsilon' = kappa / (8 |E|^2): strictly inside the
/// required chain kappa < epsilon/12, epsilon' < kappa/(4|E|^2).
AmplificationConfig auto_config(const Rat& epsilon, std::size_t e_size);
void validate_config(const AmplificationConfig& c, std::size_t e_size);

/// theta_b: factor at index h moves to sigma(h)^-1 b; tensor pairs reindex.
/// Inputs supported outside E, or index collisions (b outside B_1), fall
/// back to the identity extension.
NfoldElt theta_b(const VerbalWreathGroup& wr, const NfoldProduct& over_b,
                 const SigmaMap& sigma, const std::vector<char>& in_e, Elt b,
                 const NfoldElt& x);

/// Everything sigma-dependent bundled for the Gamma builders.
struct AmplifyInstance {
  std::shared_ptr<VerbalWreathGroup> wr;
  std::vector<WreathElement> window;  // F0
  SetsLedger ledger;
  SigmaMap sigma;
  BSets bsets;
  std::shared_ptr<NfoldProduct> over_b;  // the B-indexed verbal power
  std::vector<NfoldElt> base_elements;   // all elements of over_b
  std::map<NfoldElt, Elt> base_index;
  std::vector<NfoldElt> e_g;  // union over B_E of theta_b(E1)
  AmplificationConfig config;
};

/// F window selector: the copies of G and H ("gens") or every element
/// ("full", affordable only for tiny wreath groups).
std::vector<WreathElement> window_generators(const VerbalWreathGroup& wr);

AmplifyInstance make_instance(const FiniteGroup& g, const FiniteGroup& h,
                              const WordSet& w,
                              const std::vector<WreathElement>& f,
                              const Rat& epsilon, std::size_t b_copies = 1,
                              std::optional<Rat> kappa = std::nullopt,
                              std::optional<Rat> epsilon_prime = std::nullopt);

/// Recomputes B-sets and E_G after sigma changed (perturbation).
void refresh_sigma_dependents(AmplifyInstance& inst);

/// phi: the B-indexed verbal power into Sym(|power|), indexed by
/// base_index; the exact default is the left-regular representation.
struct PhiMap {
  std::vector<Perm> image;
};
PhiMap regular_phi(const AmplifyInstance& inst);

// --- the four amplification maps -----------------------------------------------

/// Sofic: permutation of A x B, point (a,b) indexed as b*|A| + a.
Perm gamma_sofic(const AmplifyInstance& inst, const PhiMap& phi,
                 const WreathElement& z);
/// Weakly sofic: element of A wr_B Sym(B) with A = Sym(|power|) Hamming.
WreathMetricElement gamma_weak(const AmplifyInstance& inst, const PhiMap& phi,
                               const WreathElement& z);
/// Hyperlinear: block unitary (here a permutation 0/1 matrix) of dimension
/// |A| |B|.
MatD gamma_hyper(const AmplifyInstance& inst, const PhiMap& phi,
                 const WreathElement& z);
/// Linear sofic over F_p: same block structure with exact arithmetic.
MatFp gamma_linear(const AmplifyInstance& inst, const PhiMap& phi, long long p,
                   const WreathElement& z);

DefectReport measure_sofic(const AmplifyInstance& inst, const PhiMap& phi,
                           const std::vector<WreathElement>& window);
DefectReport measure_weak(const AmplifyInstance& inst, const PhiMap& phi,
                          const std::vector<WreathElement>& window);
DefectReport measure_hyper(const AmplifyInstance& inst, const PhiMap& phi,
                           const std::vector<WreathElement>& window);
DefectReport measure_linear(const AmplifyInstance& inst, const PhiMap& phi,
                            long long p, const std::vector<WreathElement>& window);

// --- the quasi-multiplicativity checker ------------------------------------------

template <class D>
struct QuasiMultReportT {
  D epsilon{};
  std::array<D, 4> premise{};
  std::array<bool, 4> premise_pass{};
  D conclusion{};
  bool conclusion_pass = false;
  bool any_premise_failed = false;
  bool implication_holds = false;  // premises pass -> conclusion < epsilon
};
using QuasiMultReport = QuasiMultReportT<Rat>;

/// Evaluates premises (i)-(iv) at threshold epsilon/6 each and measures
/// the conclusion independently, for the sofic Gamma.
QuasiMultReport check_quasi_mult_sofic(const AmplifyInstance& inst, const PhiMap& phi,
                                  const Rat& epsilon);
QuasiMultReport check_quasi_mult_weak(const AmplifyInstance& inst, const PhiMap& phi,
                                 const Rat& epsilon);
QuasiMultReport check_quasi_mult_linear(const AmplifyInstance& inst, const PhiMap& phi,
                                   long long p, const Rat& epsilon);

// --- the pointwise-exactness bound check ------------------------------------------

struct KappaReport {
  std::size_t e_size = 0;
  Rat sofic_defect;    // measured epsilon' such that sigma is (E_H, eps')-sofic
  Rat epsilon_prime;   // chosen strictly above the measured defect
  Rat kappa;           // chosen with epsilon' < kappa / (4 |E|^2)
  Rat ratio;           // |B \ B_E| / |B|
  bool holds = false;  // ratio <= kappa
};
/// Measures sigma on E_H = E E^-1, picks the smallest admissible kappa
/// for the measured defect, and checks the bound.
KappaReport kappa_check(const FiniteGroup& h, const SigmaMap& sigma,
                        const std::vector<Elt>& e);

// --- the coordinate-wise counterexample -------------------------------------------

struct CounterexampleReport {
  unsigned p = 0;
  std::size_t witnesses = 0;
  Rat coordwise_free_defect;      // coordinate-wise map, Hamming
  bool quotient_kills_cartesian;  // induced map into Sym(p) nil2 Sym(p)
  Rat exact_free_defect;          // regular representation of the product
};
CounterexampleReport coordinatewise_counterexample(unsigned p);

}  // namespace verbal
