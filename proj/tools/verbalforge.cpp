// verbalforge: exact verbal products, wreath products, and the metric
// approximation laboratory on top of them.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <random>

#include "verbal/amplify.hpp"
#include "verbal/descriptor.hpp"
#include "verbal/metric.hpp"
#include "verbal/product.hpp"
#include "verbal/suite.hpp"
#include "verbal/wreath.hpp"

using nlohmann::ordered_json;
using namespace verbal;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_parse = 2;
constexpr int exit_unresolved = 3;
constexpr int exit_window = 4;

std::string rat_str(const Rat& r) { return verbal::to_string(r); }

ordered_json defect_json(const DefectReport& rep) {
  ordered_json j;
  j["flavor"] = rep.flavor;
  j["window_size"] = rep.window_size;
  if (rep.mult_defect) j["mult_defect"] = rat_str(*rep.mult_defect);
  if (rep.mult_defect_hs) j["mult_defect"] = *rep.mult_defect_hs;
  if (rep.free_defect) j["free_defect"] = rat_str(*rep.free_defect);
  if (rep.free_defect_hs) j["free_defect"] = *rep.free_defect_hs;
  j["trace_max"] = rep.trace_max ? ordered_json(*rep.trace_max) : ordered_json(nullptr);
  j["witnesses"] = ordered_json::array();
  if (!rep.mult_witness.empty())
    j["witnesses"].push_back({{"kind", "mult"}, {"pair", rep.mult_witness}});
  if (!rep.free_witness.empty())
    j["witnesses"].push_back({{"kind", "free"}, {"element", rep.free_witness}});
  return j;
}

int cmd_product(const std::string& da, const std::string& db,
                const std::string& dw, const std::string& engine,
                const std::string& json_path, bool with_table) {
  auto a = make_group(da);
  auto b = make_group(db);
  auto w = WordSet::parse(dw);
  auto p = BinaryVerbalProduct::build(a, b, w,
                                      BinaryVerbalProduct::parse_choice(engine));
  const Finiteness fin = p.finiteness();
  std::cout << "product " << da << " *w " << db << "  [" << dw << "]\n";
  std::cout << "engine:    " << to_string(p.engine()) << "\n";
  std::cout << "cartesian: " << p.cartesian_description() << "\n";
  if (fin.tag == Finiteness::Tag::infinite && p.engine() == EngineKind::metabelian_lattice)
    std::cout << "order:     Infinite (metabelian lattice rank "
              << p.lattice_rank() << ")\n";
  else
    std::cout << "order:     " << fin.to_string() << "\n";

  // invariant mini-suite on the constructed object
  if (fin.is_finite() && fin.order <= 4096) {
    auto rep = verify_psi_isomorphism(p);
    std::cout << "invariants: psi-isomorphism "
              << (rep.psi_isomorphism ? "ok" : "VIOLATED")
              << ", trivial intersection "
              << (rep.trivial_intersection ? "ok" : "VIOLATED")
              << ", |W(P)|=" << rep.wp_order << "\n";
    if (!rep.ok) return 1;
  } else if (p.engine() == EngineKind::metabelian_lattice) {
    std::cout << "invariants: structural (metabelian), psi "
              << (verify_psi_isomorphism(p).ok ? "ok" : "VIOLATED") << "\n";
  }

  if (!json_path.empty()) {
    ordered_json j;
    j["descriptor"] =
        ProductDescriptor{da, db, dw, engine}.to_string();
    j["engine"] = to_string(p.engine());
    j["factors"] = {da, db};
    j["wordset"] = dw;
    j["cartesian"] = p.cartesian_description();
    j["finiteness"] = fin.to_string();
    if (with_table && fin.is_finite() && fin.order <= 1024) {
      auto m = materialize(p);
      ordered_json rows = ordered_json::array();
      for (Elt i = 0; i < m.group.size(); ++i) {
        ordered_json row = ordered_json::array();
        for (Elt jj = 0; jj < m.group.size(); ++jj)
          row.push_back(m.group.mul(i, jj));
        rows.push_back(std::move(row));
      }
      j["table"] = std::move(rows);
      ordered_json labels = ordered_json::array();
      for (Elt i = 0; i < m.group.size(); ++i) labels.push_back(m.group.label(i));
      j["normal_forms"] = std::move(labels);
    }
    std::ofstream out(json_path);
    out << j.dump(2) << "\n";
  }
  if (fin.tag == Finiteness::Tag::unresolved) {
    std::cout << "unresolved at cap " << fin.cap
              << " (not a proof of infiniteness)\n";
    return exit_unresolved;
  }
  return exit_ok;
}

int cmd_wreath(const std::string& dg, const std::string& dh,
               const std::string& dw) {
  auto g = make_group(dg);
  auto h = make_group(dh);
  VerbalWreathGroup wr(g, h, WordSet::parse(dw));
  std::cout << "wreath " << dg << " wr " << dh << "  [" << dw << "]\n";
  std::cout << "base order:  " << wr.base().order() << "\n";
  std::cout << "total order: " << wr.order() << "\n";
  // action sanity on a small sample
  const auto x = wr.base().embed(0, static_cast<Elt>(g.size() - 1));
  for (Elt a = 0; a < h.size(); ++a)
    for (Elt b = 0; b < h.size(); ++b)
      if (!(wr.act(a, wr.act(b, x)) == wr.act(h.mul(a, b), x))) {
        std::cout << "action composition VIOLATED\n";
        return 1;
      }
  std::cout << "invariants: action composition ok\n";
  return exit_ok;
}

int cmd_verbal_subgroup(const std::string& dg, const std::string& dw) {
  auto g = make_group(dg);
  auto sub = verbal_subgroup(g, WordSet::parse(dw));
  std::cout << "W(" << dg << ") for " << dw << ": order " << sub.size()
            << " of " << g.size() << "\n";
  return exit_ok;
}

FgAbelianGroup parse_ab(const std::string& text) {
  // "<free_rank>[:d1,d2,...]"
  const auto colon = text.find(':');
  FgAbelianGroup g;
  try {
    g.free_rank = std::stoul(text.substr(0, colon));
    std::vector<long long> orders;
    if (colon != std::string::npos) {
      std::string rest = text.substr(colon + 1);
      std::size_t pos = 0;
      while (pos < rest.size()) {
        auto comma = rest.find(',', pos);
        if (comma == std::string::npos) comma = rest.size();
        orders.push_back(std::stoll(rest.substr(pos, comma - pos)));
        pos = comma + 1;
      }
    }
    return canonical_abelian(g.free_rank, orders);
  } catch (const std::invalid_argument&) {
    throw ParseError("bad abelian descriptor (want r[:d1,d2,...]): " + text);
  }
}

int cmd_tensor(const std::string& dm, const std::string& dn) {
  auto m = parse_ab(dm), n = parse_ab(dn);
  auto t = tensor_product(m, n);
  std::cout << m.to_string() << " (x) " << n.to_string() << " = "
            << t.to_string() << "\n";
  return exit_ok;
}

int cmd_counterexample(unsigned p, const std::string& json_path) {
  auto rep = coordinatewise_counterexample(p);
  std::cout << "coordinate-wise map on Z/" << p << " nil2 Z/" << p << ":\n";
  std::cout << "  witnesses:                 " << rep.witnesses << "\n";
  std::cout << "  coordinate-wise free defect: "
            << rat_str(rep.coordwise_free_defect) << "  FAIL-BY-DESIGN\n";
  std::cout << "  quotient map kills cartesian: "
            << (rep.quotient_kills_cartesian ? "yes" : "no") << "\n";
  std::cout << "  exact approximation free defect: "
            << rat_str(rep.exact_free_defect) << "\n";
  if (!json_path.empty()) {
    ordered_json j;
    j["p"] = rep.p;
    j["witnesses"] = rep.witnesses;
    j["coordwise_free_defect"] = rat_str(rep.coordwise_free_defect);
    j["flag"] = "FAIL-BY-DESIGN";
    j["quotient_kills_cartesian"] = rep.quotient_kills_cartesian;
    j["exact_free_defect"] = rat_str(rep.exact_free_defect);
    std::ofstream out(json_path);
    out << j.dump(2) << "\n";
  }
  return exit_ok;
}

struct ExperimentSpec {
  std::string g = "cyclic:2", h = "cyclic:3", wordset = "nil:2";
  std::string window = "gens";  // gens | full
  Rat epsilon{1, 6};
  std::optional<Rat> kappa, epsilon_prime;
  std::string flavor = "sofic";
  std::string perturb_target = "none";  // none | sigma | phi | both
  double perturb_rate = 0.0;
  std::uint64_t seed = 0;
  std::size_t b_copies = 1;
  long long field_p = 2;
};

ExperimentSpec spec_from_json(const nlohmann::json& j) {
  ExperimentSpec s;
  if (j.contains("G")) s.g = j["G"].get<std::string>();
  if (j.contains("H")) s.h = j["H"].get<std::string>();
  if (j.contains("wordset")) s.wordset = j["wordset"].get<std::string>();
  if (j.contains("F")) s.window = j["F"].get<std::string>();
  if (j.contains("epsilon")) s.epsilon = parse_rational(j["epsilon"].get<std::string>());
  if (j.contains("kappa")) s.kappa = parse_rational(j["kappa"].get<std::string>());
  if (j.contains("epsilon_prime")) {
    const auto text = j["epsilon_prime"].get<std::string>();
    if (text != "auto") s.epsilon_prime = parse_rational(text);
  }
  if (j.contains("flavor")) s.flavor = j["flavor"].get<std::string>();
  if (j.contains("perturbation")) {
    s.perturb_target = j["perturbation"].value("target", "none");
    s.perturb_rate = j["perturbation"].value("rate", 0.0);
  }
  if (j.contains("seed")) s.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("b_copies")) s.b_copies = j["b_copies"].get<std::size_t>();
  if (j.contains("field_p")) s.field_p = j["field_p"].get<long long>();
  return s;
}

int cmd_amplify(const std::string& config_path, const std::string& out_path,
                const std::string& csv_path) {
  nlohmann::json cfg;
  if (config_path.empty()) {
    cfg = nlohmann::json::object();
  } else {
    std::ifstream in(config_path);
    if (!in) throw ParseError("cannot open config " + config_path);
    in >> cfg;
  }
  const ExperimentSpec spec = spec_from_json(cfg);

  auto g = make_group(spec.g);
  auto h = make_group(spec.h);
  auto w = WordSet::parse(spec.wordset);
  VerbalWreathGroup wr(g, h, w);
  std::vector<WreathElement> window;
  if (spec.window == "full")
    window = wr.elements(1u << 12);
  else
    window = window_generators(wr);

  auto inst = make_instance(g, h, w, window, spec.epsilon, spec.b_copies,
                            spec.kappa, spec.epsilon_prime);
  auto phi = regular_phi(inst);
  std::mt19937_64 rng(spec.seed);
  bool phi_perturbed = false;
  if (spec.perturb_target == "sigma" || spec.perturb_target == "both") {
    perturb_images(inst.sigma.image, 0, spec.perturb_rate, rng);
    refresh_sigma_dependents(inst);
  }
  if (spec.perturb_target == "phi" || spec.perturb_target == "both") {
    perturb_images(phi.image, 0, spec.perturb_rate, rng);
    phi_perturbed = true;
  }

  DefectReport rep;
  std::optional<QuasiMultReport> lemma;
  if (spec.flavor == "sofic") {
    rep = measure_sofic(inst, phi, inst.window);
    lemma = check_quasi_mult_sofic(inst, phi, spec.epsilon);
  } else if (spec.flavor == "weak") {
    rep = measure_weak(inst, phi, inst.window);
    lemma = check_quasi_mult_weak(inst, phi, spec.epsilon);
  } else if (spec.flavor == "hyperlinear") {
    rep = measure_hyper(inst, phi, inst.window);
  } else if (spec.flavor == "linear") {
    rep = measure_linear(inst, phi, spec.field_p, inst.window);
    lemma = check_quasi_mult_linear(inst, phi, spec.field_p, spec.epsilon);
  } else {
    throw ParseError("unknown flavor: " + spec.flavor);
  }

  ordered_json out = defect_json(rep);
  out["G"] = spec.g;
  out["H"] = spec.h;
  out["wordset"] = spec.wordset;
  out["phi"] = phi_perturbed ? "perturbed" : "regular";
  out["sigma"] = (spec.perturb_target == "sigma" || spec.perturb_target == "both")
                     ? "perturbed"
                     : "regular";
  out["seed"] = spec.seed;
  out["ledger"] = {{"F0", inst.ledger.f0.size()},
                   {"E1", inst.ledger.e1.size()},
                   {"E1_tilde", inst.ledger.e1_tilde.size()},
                   {"E2", inst.ledger.e2.size()},
                   {"E", inst.ledger.e.size()},
                   {"E_H", inst.ledger.e_h.size()},
                   {"E_G", inst.e_g.size()},
                   {"B", inst.sigma.points},
                   {"B_E", inst.bsets.be_count}};
  out["excluded_ratio"] = rat_str(inst.bsets.excluded_ratio);
  out["config"] = {{"epsilon", rat_str(inst.config.epsilon)},
                   {"kappa", rat_str(inst.config.kappa)},
                   {"epsilon_prime", rat_str(inst.config.epsilon_prime)}};
  if (lemma) {
    ordered_json lj;
    lj["epsilon"] = rat_str(lemma->epsilon);
    lj["premises"] = ordered_json::array();
    for (int i = 0; i < 4; ++i)
      lj["premises"].push_back({{"measured", rat_str(lemma->premise[i])},
                                {"pass", lemma->premise_pass[i]}});
    lj["conclusion"] = rat_str(lemma->conclusion);
    lj["conclusion_pass"] = lemma->conclusion_pass;
    lj["implication_holds"] = lemma->implication_holds;
    out["quasi_multiplicativity"] = std::move(lj);
  }

  if (!out_path.empty()) {
    std::ofstream o(out_path);
    o << out.dump(2) << "\n";
  } else {
    std::cout << out.dump(2) << "\n";
  }

  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    csv << "element_h,element_base,dist_to_identity\n";
    for (const auto& z : inst.window) {
      std::string base;
      for (Elt cc : z.x.comp) base += std::to_string(cc);
      if (spec.flavor == "sofic") {
        const auto img = gamma_sofic(inst, phi, z);
        csv << z.h << "," << base << ","
            << rat_str(hamming_dist(img, Perm::identity(img.degree()))) << "\n";
      } else if (spec.flavor == "weak") {
        const auto img = gamma_weak(inst, phi, z);
        csv << z.h << "," << base << ","
            << rat_str(wreath_metric_dist(
                   img, wreath_metric_identity(inst.sigma.points,
                                               inst.base_elements.size())))
            << "\n";
      } else if (spec.flavor == "hyperlinear") {
        const auto img = gamma_hyper(inst, phi, z);
        csv << z.h << "," << base << "," << hs_dist(img, MatD::identity(img.n))
            << "\n";
      } else {
        const auto img = gamma_linear(inst, phi, spec.field_p, z);
        csv << z.h << "," << base << ","
            << rat_str(rank_dist(img, MatFp::identity(img.n, img.p))) << "\n";
      }
    }
  }
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verbalforge: verbal products of finite groups and their "
               "metric approximations"};
  app.require_subcommand(1);

  // product: positional triple or a single product(...) descriptor
  std::string pa, pb, pw, pengine = "auto", pjson;
  bool ptable = false;
  auto* product = app.add_subcommand("product", "build a binary verbal product");
  product->add_option("A", pa, "left factor, or product(A,B,W[,engine=..])")
      ->required();
  product->add_option("B", pb, "right factor descriptor");
  product->add_option("W", pw, "word set descriptor");
  product->add_option("--engine", pengine, "auto|direct|class2|metab|generic");
  product->add_option("--json", pjson, "write the serialized product here");
  product->add_flag("--table", ptable, "include the full table in JSON");

  // wreath: positional triple or a single wreath(...) descriptor
  std::string wg, wh, ww;
  auto* wreath = app.add_subcommand("wreath", "build a verbal wreath product");
  wreath->add_option("G", wg, "lamp group, or wreath(G,H,W)")->required();
  wreath->add_option("H", wh);
  wreath->add_option("W", ww);

  // verbal-subgroup
  std::string vg, vw;
  auto* vsub = app.add_subcommand("verbal-subgroup", "compute W(G)");
  vsub->add_option("G", vg)->required();
  vsub->add_option("W", vw)->required();

  // tensor
  std::string tm, tn;
  auto* tensor = app.add_subcommand("tensor", "tensor product of f.g. abelian "
                                              "groups, r[:d1,d2,...]");
  tensor->add_option("M", tm)->required();
  tensor->add_option("N", tn)->required();

  // amplify
  std::string aconfig, aout, acsv;
  auto* amplify = app.add_subcommand("amplify", "run an amplification experiment");
  amplify->add_option("--config", aconfig, "experiment JSON (defaults used if absent)");
  amplify->add_option("--out", aout, "report JSON path (stdout if absent)");
  amplify->add_option("--csv", acsv, "per-window-element CSV path");

  // counterexample
  unsigned cp = 3;
  std::string cjson;
  auto* counter = app.add_subcommand("counterexample",
                                     "coordinate-wise approximation failure");
  counter->add_option("-p,--prime", cp, "odd prime <= 13");
  counter->add_option("--json", cjson, "write the report here");

  // suite
  bool sjson = false;
  auto* suite = app.add_subcommand("suite", "run the verification suite");
  suite->add_flag("--json", sjson, "machine-readable verdict list");

  CLI11_PARSE(app, argc, argv);

  try {
    if (product->parsed()) {
      if (pb.empty() && pw.empty()) {
        const auto d = parse_product_descriptor(pa);
        return cmd_product(d.a, d.b, d.wordset,
                           d.engine.empty() ? pengine : d.engine, pjson, ptable);
      }
      if (pb.empty() || pw.empty())
        throw ParseError("product needs A B W or one product(...) descriptor");
      return cmd_product(pa, pb, pw, pengine, pjson, ptable);
    }
    if (wreath->parsed()) {
      if (wh.empty() && ww.empty()) {
        const auto d = parse_wreath_descriptor(wg);
        return cmd_wreath(d.g, d.h, d.wordset);
      }
      if (wh.empty() || ww.empty())
        throw ParseError("wreath needs G H W or one wreath(...) descriptor");
      return cmd_wreath(wg, wh, ww);
    }
    if (vsub->parsed()) return cmd_verbal_subgroup(vg, vw);
    if (tensor->parsed()) return cmd_tensor(tm, tn);
    if (amplify->parsed()) return cmd_amplify(aconfig, aout, acsv);
    if (counter->parsed()) return cmd_counterexample(cp, cjson);
    if (suite->parsed()) {
      const auto rows = run_suite();
      return print_suite(rows, sjson) == 0 ? exit_ok : 1;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return exit_parse;
  } catch (const WindowNotClosed& e) {
    std::cerr << "window not closed: " << e.what() << "\n";
    return exit_window;
  } catch (const EngineMismatch& e) {
    std::cerr << "engine mismatch: " << e.what() << "\n";
    return exit_parse;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_ok;
}
