#include "twistkit/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "twistkit/gns.hpp"
#include "twistkit/parse.hpp"
#include "twistkit/prism.hpp"
#include "twistkit/sandwich.hpp"
#include "twistkit/suites.hpp"
#include "twistkit/tambara.hpp"
#include "twistkit/witt.hpp"

namespace twistkit::cli {

namespace {

Json compute_goldens() {
  Json g;
  auto Z = ZRing::integers();

  // Witt coordinate examples.
  {
    auto W1 = witt::WittRing::create(Z, witt::TruncSet::p_typ(2, 1));
    Elem w = W1->make({Z->make(3), Z->make(5)});
    auto gh = witt::ghost(w);
    g["witt"]["ghost_3_5_p2"] = Json::array({gh[0].str(), gh[1].str()});
    Elem back = witt::from_ghost_elem(W1, {Z->make(0), Z->make(2)});
    g["witt"]["from_ghost_0_2_p2"] = back.str();
    auto W0 = witt::WittRing::create(Z, witt::TruncSet::p_typ(3, 0));
    auto v = witt::V(W0->make({Z->make(2)}));
    auto vg = witt::ghost(v);
    g["witt"]["V_2_ghost_p3"] = Json::array({vg[0].str(), vg[1].str()});
  }

  // delta / theta / vartheta values.
  {
    delta::DeltaRing R(Z, 2, [](const Elem& x) { return x; });
    g["delta"]["delta2_of_3_p2"] = delta::delta_n(R, Z->make(3), 2).str();
    g["delta"]["theta2_of_3_p2"] = delta::theta_n(R, Z->make(3), 2).str();
    delta::LambdaContext L(Z, [](const Elem& x, long) { return x; });
    g["delta"]["vartheta2_of_3"] = delta::vartheta(L, Z->make(3), 2).str();
    g["delta"]["vartheta3_of_3"] = delta::vartheta(L, Z->make(3), 3).str();
    g["delta"]["vartheta6_of_3"] = delta::vartheta(L, Z->make(3), 6).str();
  }

  // Reciprocity rules.
  for (auto [m, k] : sum_rule_indices()) {
    auto e = tambara::generate_sum_rule(m, k);
    g["rules"]["sum_" + std::to_string(m) + "_" + std::to_string(k)] =
        e.to_json();
  }
  for (auto mnk : std::vector<std::array<long, 3>>{{4, 2, 1}, {6, 2, 1}}) {
    auto e = tambara::generate_transfer_rule(mnk[0], mnk[1], mnk[2]);
    g["rules"]["transfer_" + std::to_string(mnk[0]) + "_" +
               std::to_string(mnk[1]) + "_" + std::to_string(mnk[2])] =
        e.to_json();
  }

  // Prism examples on the q-de Rham model at p = 2.
  {
    prism::Presentation A = prism::Presentation::q_de_rham(2);
    auto lvl1 = A.level_ring(0, 1);
    Elem q = lvl1->make(MPoly::variable(A.var()));
    auto comps = A.to_transversal(q, 1);
    g["prism"]["q_transversal_level1"] =
        Json::array({comps[0].str(), comps[1].str()});
    auto lvl0 = A.level_ring(0, 0);
    Elem q0 = lvl0->make(MPoly::variable(A.var()));
    g["prism"]["N_q_level1"] = A.tamb_N(q0, 1).str();
    g["prism"]["V_q_level1"] = A.tamb_V(q0, 1).str();
    g["prism"]["pi1"] = A.pi(0, 1).str();
    g["prism"]["defect_level1"] = A.cohomological_defect(1).str();
    g["prism"]["refraction_f_d"] = A.refraction_check(A.d());
    g["prism"]["refraction_f_dt"] =
        A.refraction_check(A.d() * MPoly::variable(A.var()));
  }

  // Sandwich epsilon_1 on constants (3, 5), q-de Rham p=2, m=n=1.
  {
    prism::Presentation A = prism::Presentation::q_de_rham(2);
    sandwich::Context ctx(A, 1, 1);
    auto src = ctx.source_base();
    auto eps = ctx.epsilon_closed({src->make(MPoly::constant(3)),
                                   src->make(MPoly::constant(5))});
    g["sandwich"]["epsilon1_at_3_5"] =
        Json::array({eps[0].str(), eps[1].str()});
  }

  // GNS values.
  {
    gns::Spec mult = gns::Spec::multiplicative();
    gns::Spec red = gns::Spec::multiplicative_reduced();
    g["gns"]["phi6"] = mult.phi_d(6).str();
    g["gns"]["s_reduced_3"] = red.s(3).str();
    g["gns"]["twisted_square"] = gns::twisted_power(red, 2).str();
    gns::Spec hyp = gns::Spec::hyperbolic(16);
    g["gns"]["hyperbolic_2"] = hyp.s(2).str();
    VarId qv = mult.qvar();
    MPoly four_q = MPoly::constant(1) + MPoly::variable(qv) +
                   MPoly::variable(qv, 2) + MPoly::variable(qv, 3);
    MPoly two_q = MPoly::constant(1) + MPoly::variable(qv);
    MPoly two_q2 = MPoly::constant(1) + MPoly::variable(qv, 2);
    g["gns"]["rem_4q_2q"] = four_q.rem_monic(two_q, qv).str();
    g["gns"]["rem_2q2_2q"] = two_q2.rem_monic(two_q, qv).str();
  }
  return g;
}

int cmd_goldens(bool update, const std::string& dir, std::string& out) {
  Json fresh = compute_goldens();
  std::string path = dir + "/goldens.json";
  if (update) {
    std::ofstream f(path);
    if (!f) {
      out = "cannot write " + path + "\n";
      return 2;
    }
    f << fresh.dump(1) << "\n";
    out = "wrote " + path + "\n";
    return 0;
  }
  std::ifstream f(path);
  if (!f) {
    out = "missing golden file " + path + " (run with --update)\n";
    return 2;
  }
  Json stored;
  f >> stored;
  if (stored == fresh) {
    out = "goldens match (" + path + ")\n";
    return 0;
  }
  Json diff = Json::array();
  for (auto& [section, values] : fresh.items()) {
    for (auto& [key, val] : values.items()) {
      if (!stored.contains(section) || !stored[section].contains(key) ||
          stored[section][key] != val) {
        diff.push_back(Json{{"section", section},
                            {"key", key},
                            {"fresh", val},
                            {"stored", stored.contains(section) &&
                                               stored[section].contains(key)
                                           ? stored[section][key]
                                           : Json()}});
      }
    }
  }
  out = "goldens differ:\n" + diff.dump(1) + "\n";
  return 1;
}

int cmd_compute(const std::string& what, const Json& opts, std::string& out) {
  std::ostringstream os;
  if (what == "twisted-power") {
    gns::Spec spec = gns::Spec::multiplicative();
    long stretch = opts.value("stretch", 1L);
    if (stretch > 1) spec = spec.rescaled(stretch);
    long n = opts.at("n").get<long>();
    MPoly tp = gns::twisted_power(spec, n);
    VarId x = var_id("x"), y = var_id("y");
    if (opts.contains("x")) tp = tp.subst(x, parse_poly(opts.at("x")));
    if (opts.contains("y")) tp = tp.subst(y, parse_poly(opts.at("y")));
    os << tp.str() << "\n";
  } else if (what == "epsilon") {
    long m = opts.at("m").get<long>();
    long n = opts.at("n").get<long>();
    prism::Presentation A = prism::Presentation::from_config(
        Json{{"model", opts.value("model", std::string("q-de-rham"))},
             {"p", opts.value("p", 2L)}});
    sandwich::Context ctx(A, m, n);
    auto polys = parse_poly_list(opts.at("a").get<std::string>());
    std::vector<Elem> a;
    for (auto& pp : polys) a.push_back(ctx.source_base()->make(pp));
    auto eps = ctx.epsilon_closed(a);
    os << "epsilon_" << m << " ghost coordinates:\n";
    for (size_t i = 0; i < eps.size(); ++i)
      os << "  [" << i << "] " << eps[i].str() << "\n";
  } else if (what == "norm") {
    long m = opts.at("m").get<long>();
    long n = opts.at("n").get<long>();
    MPoly f = parse_poly(opts.at("f").get<std::string>());
    gns::Spec spec = gns::Spec::multiplicative();
    gns::Functor fun(spec);
    MPoly lift = gns::norm_lift(spec, f, m, n);
    Elem nf = fun.N(fun.level(n)->make(f), n, m * n);
    os << "~N^" << m * n << "_" << n << "(f) = " << lift.str() << "\n";
    os << "N^" << m * n << "_" << n << "(f mod s(" << n
       << ")) = " << nf.str() << "\n";
  } else if (what == "rule") {
    long m = opts.at("m").get<long>();
    long k = opts.value("k", 1L);
    if (opts.contains("mid")) {
      auto e = tambara::generate_transfer_rule(m, opts.at("mid").get<long>(), k);
      os << e.str() << "\n" << e.to_json().dump(1) << "\n";
    } else {
      auto e = tambara::generate_sum_rule(m, k);
      os << e.str() << "\n" << e.to_json().dump(1) << "\n";
    }
  } else if (what == "ghost") {
    long p = opts.value("p", 2L);
    auto Z = ZRing::integers();
    auto polys = parse_poly_list(opts.at("coords").get<std::string>());
    std::vector<Elem> coords;
    for (auto& pp : polys) coords.push_back(Z->make(pp.constant_term()));
    auto W = witt::WittRing::create(
        Z, witt::TruncSet::p_typ(p, static_cast<long>(coords.size()) - 1));
    auto gh = witt::ghost(W->make(coords));
    os << "(";
    for (size_t i = 0; i < gh.size(); ++i) os << (i ? ", " : "") << gh[i].str();
    os << ")\n";
  } else if (what == "vartheta") {
    long d = opts.at("d").get<long>();
    MPoly f = parse_poly(opts.at("f").get<std::string>());
    if (f.is_constant()) {
      auto Z = ZRing::integers();
      delta::LambdaContext L(Z, [](const Elem& x, long) { return x; });
      os << delta::vartheta(L, Z->make(f.constant_term()), d).str() << "\n";
    } else {
      auto Zq = PolyRing::over_z({"q"});
      VarId q = var_id("q");
      delta::LambdaContext L(Zq, [Zq, q](const Elem& x, long mm) {
        return Zq->make(x.as<MPoly>().subst_pow(q, mm));
      });
      os << delta::vartheta(L, Zq->make(f), d).str() << "\n";
    }
  } else if (what == "phi-d") {
    long d = opts.at("d").get<long>();
    gns::Spec spec = gns::Spec::from_config(
        Json{{"name", opts.value("spec", std::string("multiplicative"))}});
    os << spec.phi_d(d).str() << "\n";
  } else {
    out = "unknown compute target '" + what + "'\n";
    return 2;
  }
  out = os.str();
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::string& out) {
  CLI::App app{"twistkit: exact Witt-vector, prism-tower and q-series "
               "identity verification"};
  app.require_subcommand(0, 1);

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all";
  SuiteConfig cfg;
  std::string config_path, output_path, markdown_path;
  verify->add_option("suite", suite,
                     "witt | reciprocity | prism | sandwich | gns | all");
  verify->add_option("--config", config_path, "JSON config file");
  verify->add_option("--primes", cfg.primes, "primes to exercise");
  verify->add_option("--p", cfg.primes, "alias for --primes");
  verify->add_option("--levels", cfg.levels, "maximum tower level");
  verify->add_option("--range", cfg.gns_range, "GNS sweep range");
  verify->add_option("--samples", cfg.samples, "samples per check");
  verify->add_option("--seed", cfg.seed, "PRNG seed");
  verify->add_option("--series-order", cfg.series_order, "series truncation");
  verify->add_option("--padic-digits", cfg.padic_digits, "p-adic precision");
  verify->add_option("--model", cfg.model,
                     "restrict prism/sandwich suites to one model");
  verify->add_option("--spec", cfg.gns_spec,
                     "restrict the gns suite to one built-in series");
  verify->add_option("--m", cfg.m_only, "sandwich: fix m");
  verify->add_option("--n", cfg.n_only, "sandwich: fix n");
  verify->add_option("--output", output_path, "write the JSON report here");
  verify->add_option("--markdown", markdown_path,
                     "write a derived markdown report here");
  std::string witt_cache;
  verify->add_option("--witt-cache", witt_cache,
                     "universal Witt polynomial cache file (loaded before, "
                     "saved after)");

  // compute
  auto* compute = app.add_subcommand("compute", "evaluate one expression");
  std::string what;
  compute->add_option("what", what,
                      "twisted-power | epsilon | norm | rule | ghost | "
                      "vartheta | phi-d")
      ->required();
  std::map<std::string, std::string> sopts;
  long on = 0, om = 0, ok_ = 1, od = 0, omid = 0, op = 2, ostretch = 1;
  std::string ox, oy, of, oa, ocoords, omodel = "q-de-rham", ospec;
  compute->add_option("--n", on);
  compute->add_option("--m", om);
  compute->add_option("--k", ok_);
  compute->add_option("--mid", omid);
  compute->add_option("--d", od);
  compute->add_option("--p", op);
  compute->add_option("--stretch", ostretch);
  compute->add_option("--x", ox);
  compute->add_option("--y", oy);
  compute->add_option("--f", of);
  compute->add_option("--a", oa);
  compute->add_option("--coords", ocoords);
  compute->add_option("--model", omodel);
  compute->add_option("--spec", ospec);

  // goldens
  auto* goldens = app.add_subcommand("goldens", "check or refresh goldens");
  bool update = false;
  std::string dir = "goldens";
  goldens->add_flag("--update", update, "rewrite the golden file");
  goldens->add_option("--dir", dir, "goldens directory");

  std::vector<const char*> argv;
  argv.push_back("twistkit");
  for (auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()),
              const_cast<char**>(argv.data()));
  } catch (const CLI::CallForHelp& e) {
    out = app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    out = std::string(e.what()) + "\n" + app.help();
    return 2;
  }

  try {
    if (verify->parsed()) {
      if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) {
          out = "cannot read config " + config_path + "\n";
          return 2;
        }
        Json j;
        try {
          f >> j;
        } catch (const std::exception& e) {
          out = std::string("config parse error: ") + e.what() + "\n";
          return 2;
        }
        SuiteConfig file_cfg = SuiteConfig::from_json(j);
        // Flags given explicitly override the file.
        if (verify->count("--primes") == 0 && verify->count("--p") == 0)
          cfg.primes = file_cfg.primes;
        if (verify->count("--levels") == 0) cfg.levels = file_cfg.levels;
        if (verify->count("--range") == 0) cfg.gns_range = file_cfg.gns_range;
        if (verify->count("--samples") == 0) cfg.samples = file_cfg.samples;
        if (verify->count("--seed") == 0) cfg.seed = file_cfg.seed;
        if (verify->count("--series-order") == 0)
          cfg.series_order = file_cfg.series_order;
        if (verify->count("--padic-digits") == 0)
          cfg.padic_digits = file_cfg.padic_digits;
      }
      if (suite != "witt" && suite != "reciprocity" && suite != "prism" &&
          suite != "sandwich" && suite != "gns" && suite != "all") {
        out = "unknown suite '" + suite + "'\n" + app.help();
        return 2;
      }
      if (const char* tenv = std::getenv("TWISTKIT_THREADS"))
        cfg.threads = std::max(1L, std::atol(tenv));
      if (!witt_cache.empty()) witt::universal_cache_load_file(witt_cache);
      report::Collector collector;
      run_suite(suite, cfg, collector);
      if (!witt_cache.empty()) witt::universal_cache_save_file(witt_cache);
      Json rep = collector.to_json(
          Json{{"suite", suite}, {"config", cfg.to_json()}});
      std::string text = rep.dump(1) + "\n";
      if (!output_path.empty()) {
        std::ofstream f(output_path);
        f << text;
      }
      if (!markdown_path.empty()) {
        std::ofstream f(markdown_path);
        f << collector.to_markdown();
      }
      out = text;
      return collector.all_ok(true) ? 0 : 1;
    }
    if (compute->parsed()) {
      Json opts;
      if (compute->count("--n")) opts["n"] = on;
      if (compute->count("--m")) opts["m"] = om;
      if (compute->count("--k")) opts["k"] = ok_;
      if (compute->count("--mid")) opts["mid"] = omid;
      if (compute->count("--d")) opts["d"] = od;
      if (compute->count("--p")) opts["p"] = op;
      if (compute->count("--stretch")) opts["stretch"] = ostretch;
      if (compute->count("--x")) opts["x"] = ox;
      if (compute->count("--y")) opts["y"] = oy;
      if (compute->count("--f")) opts["f"] = of;
      if (compute->count("--a")) opts["a"] = oa;
      if (compute->count("--coords")) opts["coords"] = ocoords;
      if (compute->count("--model")) opts["model"] = omodel;
      if (compute->count("--spec")) opts["spec"] = ospec;
      return cmd_compute(what, opts, out);
    }
    if (goldens->parsed()) return cmd_goldens(update, dir, out);
  } catch (const Error& e) {
    out = std::string("error: ") + e.what() + "\n";
    return 1;
  } catch (const std::exception& e) {
    out = std::string("error: ") + e.what() + "\n";
    return 2;
  }
  out = app.help();
  return 2;
}

}  // namespace twistkit::cli
