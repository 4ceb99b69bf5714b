// Command-line front end: every verification the library performs, exposed
// as subcommands with exact rational reports.
//
// Exit codes: 0 all verdicts true, 1 a verification failed, 2 bad input
// (with a column diagnostic for one-line expressions).

#include "ka/io_json.hpp"
#include "ka/master_system.hpp"
#include "ka/metric_lab.hpp"
#include "ka/spinor_module.hpp"
#include "ka/square_classifier.hpp"
#include "ka/stabilizer.hpp"
#include "ka/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace ka;

struct Report {
  Json j;
  bool all_true = true;

  explicit Report(std::string command) {
    j["command"] = std::move(command);
    j["verdicts"] = Json::object();
    j["certificates"] = Json::object();
  }
  void verdict(const std::string& name, bool value) {
    j["verdicts"][name] = value;
    all_true = all_true && value;
  }
  void cert(const std::string& name, const Json& value) { j["certificates"][name] = value; }
  int finish(bool as_json, double seconds) {
    j["timing"] = Json{{"seconds", seconds}};
    if (as_json) {
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "command: " << j["command"].get<std::string>() << "\n";
      for (auto& [k, v] : j["verdicts"].items())
        std::cout << "  [" << (v.get<bool>() ? "pass" : "FAIL") << "] " << k << "\n";
      for (auto& [k, v] : j["certificates"].items())
        std::cout << "  " << k << ": " << v.dump() << "\n";
      std::cout << "  time: " << j["timing"]["seconds"].get<double>() << " s\n";
    }
    return all_true ? 0 : 1;
  }
};

struct SpaceOpts {
  std::string metric_file;
  std::string signature;

  QuadraticSpace resolve() const {
    if (!metric_file.empty()) return load_metric(load_json_file(metric_file));
    if (!signature.empty()) return QuadraticSpace::from_signature(signature);
    throw input_error("provide --metric FILE or --signature STR");
  }
};

void add_space_opts(CLI::App* cmd, SpaceOpts& opts) {
  cmd->add_option("--metric", opts.metric_file, "metric JSON file");
  cmd->add_option("--signature", opts.signature, "diagonal signature string, e.g. ++++---");
}

Json triple_to_json(const std::array<Multivector, 3>& t) {
  return Json::array({t[0].str(), t[1].str(), t[2].str()});
}

Json verdict_to_json(const SquareVerdict& v) {
  Json j{{"is_square", v.is_square},
         {"kind", to_string(v.kind)},
         {"c", to_string(v.c)},
         {"pseudo_norm_squared", to_string(Rational(64) * v.c * v.c)}};
  if (v.triple) j["triple"] = triple_to_json(*v.triple);
  if (v.witness_beta) j["witness_beta"] = v.witness_beta->str();
  return j;
}

double now_seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_cli(int argc, char** argv) {
  CLI::App app{"exact Clifford / Kahler-Atiyah algebra toolkit for signature (4,3)"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "emit the machine-readable report");

  // ---- algebra selftest ----
  auto* algebra = app.add_subcommand("algebra", "product laws");
  auto* selftest = algebra->add_subcommand("selftest", "associativity sweep and volume laws");
  SpaceOpts self_opts;
  add_space_opts(selftest, self_opts);

  // ---- square check ----
  auto* square = app.add_subcommand("square", "spinor square tests");
  auto* sq_check = square->add_subcommand("check", "decide whether a form is a spinor square");
  SpaceOpts sq_opts;
  add_space_opts(sq_check, sq_opts);
  int sq_l = 1;
  std::string sq_alpha, sq_beta;
  sq_check->add_option("--l", sq_l, "volume sign, +1 or -1");
  sq_check->add_option("--alpha", sq_alpha, "candidate form")->required();
  sq_check->add_option("--beta", sq_beta, "optional witness form");

  // ---- g2 ----
  auto* g2 = app.add_subcommand("g2", "structures of negative-norm three-forms");
  auto* g2_verify = g2->add_subcommand("verify", "check the quadratic characterization");
  SpaceOpts g2v_opts;
  add_space_opts(g2_verify, g2v_opts);
  int g2v_l = 1;
  std::string g2v_phi;
  g2_verify->add_option("--l", g2v_l, "volume sign");
  g2_verify->add_option("--phi", g2v_phi, "three-form")->required();

  auto* g2_dec = g2->add_subcommand("decompose", "split a form into irreducible components");
  SpaceOpts g2d_opts;
  add_space_opts(g2_dec, g2d_opts);
  int g2d_l = 1;
  std::string g2d_phi, g2d_alpha;
  g2_dec->add_option("--l", g2d_l, "volume sign");
  g2_dec->add_option("--phi", g2d_phi, "structure three-form")->required();
  g2_dec->add_option("--alpha", g2d_alpha, "form to decompose (degree 2 or 3)")->required();

  auto* g2_lemma = g2->add_subcommand("lemma", "verify the contraction identities");
  SpaceOpts g2l_opts;
  add_space_opts(g2_lemma, g2l_opts);
  int g2l_l = 1;
  std::string g2l_phi;
  g2_lemma->add_option("--l", g2l_l, "volume sign");
  g2_lemma->add_option("--phi", g2l_phi, "structure three-form")->required();

  // ---- stab compute ----
  auto* stab = app.add_subcommand("stab", "infinitesimal stabilizers");
  auto* stab_c = stab->add_subcommand("compute", "stabilizer algebra of a form");
  SpaceOpts stab_opts;
  add_space_opts(stab_c, stab_opts);
  std::string stab_alpha;
  stab_c->add_option("--alpha", stab_alpha, "form to stabilize")->required();

  // ---- spinor square ----
  auto* spinor = app.add_subcommand("spinor", "paired spinor module operations");
  auto* sp_sq = spinor->add_subcommand("square", "square of a spinor as an exterior form");
  std::string sp_sig, sp_eps;
  int sp_l = 1, sp_mu = 1;
  sp_sq->add_option("--signature", sp_sig, "diagonal signature string")->required();
  sp_sq->add_option("--l", sp_l, "volume sign");
  sp_sq->add_option("--mu", sp_mu, "square sign");
  sp_sq->add_option("--spinor", sp_eps, "comma-separated 8 rationals")->required();

  // ---- master check ----
  auto* master = app.add_subcommand("master", "parallel-spinor differential systems");
  auto* master_c = master->add_subcommand("check", "pointwise consistency of a batch file");
  std::string master_batch;
  master_c->add_option("--batch", master_batch, "batch JSON file")->required();

  // ---- metric ----
  auto* metric = app.add_subcommand("metric", "the R^7 ansatz laboratory");
  std::string ans_file_ch, ans_file_ct, ans_file_sc, ans_file_lc;
  auto* m_ch = metric->add_subcommand("christoffel", "Levi-Civita coefficients");
  m_ch->add_option("--ansatz", ans_file_ch, "ansatz JSON file")->required();
  auto* m_ct = metric->add_subcommand("contorsion", "minimal triple-preserving contorsion");
  m_ct->add_option("--ansatz", ans_file_ct, "ansatz JSON file")->required();
  auto* m_sc = metric->add_subcommand("scalar", "scalar curvature and flatness criterion");
  m_sc->add_option("--ansatz", ans_file_sc, "ansatz JSON file")->required();
  auto* m_lc = metric->add_subcommand("lc-check", "Levi-Civita triple preservation");
  m_lc->add_option("--ansatz", ans_file_lc, "ansatz JSON file")->required();

  // ---- paper verify-all ----
  auto* paper = app.add_subcommand("paper", "the full verification suite");
  auto* verify_all = paper->add_subcommand("verify-all", "run every criterion");

  CLI11_PARSE(app, argc, argv);
  auto t0 = std::chrono::steady_clock::now();

  if (selftest->parsed()) {
    Report rep("algebra selftest");
    QuadraticSpace q = self_opts.metric_file.empty() && self_opts.signature.empty()
                           ? QuadraticSpace::null_basis()
                           : self_opts.resolve();
    auto a = check_associativity_all_triples(q);
    rep.verdict("associativity_all_triples", a.ok);
    rep.cert("triples", a.triples);
    rep.cert("integer_fast_path", a.used_fast_path);
    if (q.volume_squares_to_one()) {
      rep.verdict("volume_laws", check_volume_laws(q));
    } else {
      rep.cert("volume_squares_to_one", false);
    }
    return rep.finish(as_json, now_seconds(t0));
  }

  if (sq_check->parsed()) {
    Report rep("square check");
    QuadraticSpace q = sq_opts.resolve();
    Multivector alpha = parse_multivector(sq_alpha);
    std::optional<Multivector> beta;
    if (!sq_beta.empty()) beta = parse_multivector(sq_beta);
    SquareVerdict v = check_square_conditions(q, sq_l, alpha, beta);
    rep.verdict("is_square", v.is_square);
    rep.cert("verdict", verdict_to_json(v));
    return rep.finish(as_json, now_seconds(t0));
  }

  if (g2_verify->parsed()) {
    Report rep("g2 verify");
    QuadraticSpace q = g2v_opts.resolve();
    auto s = check_g2star(q, g2v_l, parse_multivector(g2v_phi));
    rep.verdict("is_g2star_structure", s.has_value());
    if (s) {
      rep.cert("kappa", s->kappa());
      rep.cert("c", to_string(s->c()));
      rep.cert("c_squared", to_string(s->c_squared()));
      rep.cert("l", s->l());
    }
    return rep.finish(as_json, now_seconds(t0));
  }

  if (g2_dec->parsed()) {
    Report rep("g2 decompose");
    QuadraticSpace q = g2d_opts.resolve();
    auto s = check_g2star(q, g2d_l, parse_multivector(g2d_phi));
    if (!s) throw input_error("phi does not define a structure for this metric and l");
    Multivector alpha = parse_multivector(g2d_alpha);
    if (alpha.is_homogeneous(2)) {
      auto [p7, p14] = s->split_two_form(alpha);
      rep.verdict("decomposed", p7 + p14 == alpha);
      rep.cert("part7", p7.str());
      rep.cert("part14", p14.str());
    } else if (alpha.is_homogeneous(3)) {
      auto ts = s->split_three_form(alpha);
      rep.verdict("decomposed", ts.part1 + ts.part7 + ts.part27 == alpha);
      rep.cert("part1", ts.part1.str());
      rep.cert("part7", ts.part7.str());
      rep.cert("part27", ts.part27.str());
    } else {
      throw input_error("--alpha must be homogeneous of degree 2 or 3");
    }
    return rep.finish(as_json, now_seconds(t0));
  }

  if (g2_lemma->parsed()) {
    Report rep("g2 lemma");
    QuadraticSpace q = g2l_opts.resolve();
    auto s = check_g2star(q, g2l_l, parse_multivector(g2l_phi));
    if (!s) throw input_error("phi does not define a structure for this metric and l");
    auto lr = lemma_identities_report(*s);
    rep.verdict("item1", lr.item1);
    rep.verdict("item2", lr.item2);
    rep.verdict("item3", lr.item3);
    rep.verdict("item4", lr.item4);
    rep.cert("c", to_string(s->c()));
    return rep.finish(as_json, now_seconds(t0));
  }

  if (stab_c->parsed()) {
    Report rep("stab compute");
    QuadraticSpace q = stab_opts.resolve();
    LieSubalgebra st = stabilizer_algebra(q, parse_multivector(stab_alpha));
    LieStructureReport lr = lie_structure_report(st);
    rep.verdict("bracket_closes", true);  // construction would have thrown
    rep.cert("dim", lr.dim);
    rep.cert("derived_series_dims", lr.derived_series_dims);
    rep.cert("lower_central_dims", lr.lower_central_dims);
    rep.cert("center_dim", lr.center_dim);
    rep.cert("killing_rank", lr.killing_rank);
    rep.cert("killing_radical_dim", lr.killing_radical_dim);
    rep.cert("killing_radical_is_ideal", lr.killing_radical_is_ideal);
    rep.cert("killing_radical_lower_central_dims", lr.killing_radical_lower_central_dims);
    rep.cert("quotient_dim", lr.quotient_dim);
    rep.cert("quotient_killing_rank", lr.quotient_killing_rank);
    if (!lr.killing_radical_lower_central_dims.empty() &&
        lr.killing_radical_lower_central_dims.back() == 0 && lr.killing_radical_dim > 0) {
      LieSubalgebra radical(q, killing_radical_basis(st));
      rep.cert("radical_salamon", nilpotent_signature(radical));
    }
    return rep.finish(as_json, now_seconds(t0));
  }

  if (sp_sq->parsed()) {
    Report rep("spinor square");
    PairedSpinorModule mod(verify::detail::signs_of(sp_sig), sp_l);
    Spinor eps = parse_spinor(sp_eps);
    Multivector sq = mod.square(eps, sp_mu);
    SpinorClassification cls = mod.classify(eps);
    rep.verdict("both_routes_agree", sq == mod.square_by_sum(eps, sp_mu));
    rep.cert("square", sq.str());
    rep.cert("pseudo_norm", to_string(cls.pseudo_norm));
    rep.cert("isotropic", cls.isotropic);
    return rep.finish(as_json, now_seconds(t0));
  }

  if (master_c->parsed()) {
    Report rep("master check");
    Json batch = load_json_file(master_batch);
    if (!batch.is_array()) throw input_error("batch file must be a JSON array of records");
    Json records = Json::array();
    bool all = true;
    for (const auto& rec : batch) {
      QuadraticSpace q = rec.contains("metric")
                             ? load_metric(rec)
                             : QuadraticSpace::from_signature(rec.at("signature").get<std::string>());
      int l = rec.value("l", 1);
      Multivector alpha = parse_multivector(rec.at("alpha").get<std::string>());
      Json out;
      bool rec_ok = true;
      Json dirs = Json::array();
      for (int v = 1; v <= 7; ++v) {
        std::string key = std::to_string(v);
        if (!rec.at("a").contains(key)) continue;
        Multivector a_v = parse_multivector(rec.at("a").at(key).get<std::string>());
        Multivector m = master_rhs(q, l, a_v, alpha);
        Json dir{{"direction", v}, {"master_rhs", m.str()}};
        if (main_antiautomorphism(alpha) == alpha) {
          ExpandedRates e =
              expanded_rhs(q, l, a_v, alpha.scalar_part(), alpha.grade(3));
          bool agree = m.grade(0).scalar_part() == e.scalar_rate && m.grade(3) == e.three_rate &&
                       m.grade(1).is_zero() && m.grade(2).is_zero();
          dir["matches_expanded"] = agree;
          dir["scalar_rate"] = to_string(e.scalar_rate);
          rec_ok = rec_ok && agree;
        }
        dirs.push_back(dir);
      }
      out["directions"] = dirs;
      out["alpha_is_square"] = check_square_conditions(q, l, alpha).is_square;
      records.push_back(out);
      all = all && rec_ok;
    }
    rep.verdict("all_records_consistent", all);
    rep.cert("records", records);
    return rep.finish(as_json, now_seconds(t0));
  }

  if (m_ch->parsed()) {
    Report rep("metric christoffel");
    AnsatzMetric g = load_ansatz(load_json_file(ans_file_ch));
    Christoffel ch(g);
    Json out = Json::array();
    for (int k = 0; k < 7; ++k)
      for (int i = 0; i < 7; ++i)
        for (int j = i; j < 7; ++j) {
          const MetricFun& f = ch.gamma(k, i, j);
          if (f.is_zero()) continue;
          out.push_back(Json{{"upper", kVarNames[k]},
                             {"lower", Json::array({kVarNames[i], kVarNames[j]})},
                             {"value", g.to_ratfun(f).str()}});
        }
    rep.verdict("computed", true);
    rep.cert("nonzero_components", out);
    return rep.finish(as_json, now_seconds(t0));
  }

  if (m_ct->parsed()) {
    Report rep("metric contorsion");
    AnsatzMetric g = load_ansatz(load_json_file(ans_file_ct));
    ContorsionField a = contorsion_minimal(g);
    Json out = Json::array();
    for (int u = 0; u < 7; ++u)
      for (int v = 0; v < 7; ++v)
        for (int w = v + 1; w < 7; ++w) {
          if (a.at(u, v, w).is_zero()) continue;
          out.push_back(Json{{"slots", Json::array({kVarNames[u], kVarNames[v], kVarNames[w]})},
                             {"value", g.to_ratfun(a.at(u, v, w)).str()}});
        }
    rep.verdict("involutive", involutivity_check(g, a));
    rep.cert("nonzero_components", out);
    return rep.finish(as_json, now_seconds(t0));
  }

  if (m_sc->parsed()) {
    Report rep("metric scalar");
    AnsatzMetric g = load_ansatz(load_json_file(ans_file_sc));
    RatFun7 sc = scalar_curvature(g);
    RatFun7 cond = scalar_flat_condition(g);
    rep.verdict("computed", true);
    rep.cert("scalar_curvature", sc.str());
    rep.cert("scalar_flat_condition", cond.str());
    rep.cert("scalar_flat", sc.is_zero());
    // numeric oracle section: floating point, clearly labeled
    NumericCurvature nc(g);
    Json oracle = Json::array();
    for (const auto& pt : default_sample_points()) {
      std::array<double, 7> dpt;
      Json jpt = Json::array();
      for (int i = 0; i < 7; ++i) {
        dpt[i] = static_cast<double>(num(pt[i])) / static_cast<double>(den(pt[i]));
        jpt.push_back(to_string(pt[i]));
      }
      try {
        Rational exact = sc.eval(pt);
        oracle.push_back(Json{{"point", jpt},
                              {"exact", to_string(exact)},
                              {"finite_difference", nc.scalar(dpt)}});
      } catch (const eval_error&) {
        oracle.push_back(Json{{"point", jpt}, {"skipped", "denominator vanishes"}});
      }
    }
    rep.cert("numeric_oracle_floating_point", oracle);
    return rep.finish(as_json, now_seconds(t0));
  }

  if (m_lc->parsed()) {
    Report rep("metric lc-check");
    AnsatzMetric g = load_ansatz(load_json_file(ans_file_lc));
    LcParallelReport lr = lc_parallel_report(g);
    rep.verdict("involutive", lr.involutive);
    rep.verdict("triples_isotropic", lr.triples_isotropic);
    rep.verdict("squares_accepted", lr.squares_accepted);
    rep.cert("used_full_square_check", lr.used_full_square_check);
    return rep.finish(as_json, now_seconds(t0));
  }

  if (verify_all->parsed()) {
    Report rep("paper verify-all");
    auto results = verify::run_all();
    Json arr = Json::array();
    for (const auto& c : results) {
      rep.verdict("criterion_" + (c.id < 10 ? std::string("0") : std::string()) +
                      std::to_string(c.id),
                  c.pass);
      arr.push_back(Json{{"id", c.id},
                         {"name", c.name},
                         {"pass", c.pass},
                         {"details", c.details},
                         {"seconds", c.seconds}});
      if (!as_json)
        std::cout << "[" << (c.pass ? "PASS" : "FAIL") << "] criterion " << c.id << ": " << c.name
                  << " (" << c.seconds << " s)\n";
    }
    rep.cert("criteria", arr);
    return rep.finish(as_json, now_seconds(t0));
  }

  std::cerr << "no subcommand selected\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const ka::witness_rejected_error& e) {
    std::cerr << "witness rejected: " << e.what() << "\n";
    return 2;
  } catch (const ka::input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const ka::eval_error& e) {
    std::cerr << "evaluation error: " << e.what() << "\n";
    return 2;
  } catch (const ka::irrational_scale_error& e) {
    std::cerr << "scale error: " << e.what() << "\n";
    return 2;
  } catch (const ka::structure_error& e) {
    std::cerr << "structure error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
