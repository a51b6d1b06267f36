// twospin: exact and approximate two-spin partition functions on planar
// graphs, wrapped-lattice gadget diagnostics, phase-marginal estimators,
// the independent-set hardness reduction, and the log-partition scheme.
//
// All rationals on the command line are "p" or "p/q" strings; decimals are
// rejected. Output is JSON (default) or flattened CSV; identical flags and
// seed produce byte-identical output.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "twospin/baker.hpp"
#include "twospin/boundaries.hpp"
#include "twospin/brute_force.hpp"
#include "twospin/contours.hpp"
#include "twospin/dp.hpp"
#include "twospin/enclosures.hpp"
#include "twospin/gadget.hpp"
#include "twospin/generate.hpp"
#include "twospin/glauber.hpp"
#include "twospin/graph.hpp"
#include "twospin/levels.hpp"
#include "twospin/phase.hpp"
#include "twospin/reduction.hpp"
#include "twospin/terminal_dist.hpp"
#include "twospin/tree_decomposition.hpp"

using json = nlohmann::ordered_json;
using namespace twospin;

namespace {

// ---- shared option plumbing -------------------------------------------------

struct GlobalOpts {
  std::string format = "json";
  std::uint64_t seed = 0;
  int threads = 1;
};

struct ParamOpts {
  std::string beta = "1";
  std::string gamma = "0";
  std::string lambda = "1";

  SpinParams parse() const {
    return {parse_rational(beta), parse_rational(gamma), parse_rational(lambda)};
  }
};

void add_param_opts(CLI::App* cmd, ParamOpts& p) {
  cmd->add_option("--beta", p.beta, "edge weight for a 0-0 edge (p/q)");
  cmd->add_option("--gamma", p.gamma, "edge weight for a 1-1 edge (p/q)");
  cmd->add_option("--lambda", p.lambda, "vertex activity for spin 1 (p/q)");
}

// --graph accepts a JSON file path or a generator spec:
//   k4 | prism | cube | octahedron | triangle | grid:WxH | cycle:N | power:SPEC:K
EmbeddedGraph resolve_graph(const std::string& spec) {
  if (spec == "k4") return generate_k4();
  if (spec == "prism") return generate_prism();
  if (spec == "cube") return generate_cube();
  if (spec == "octahedron") return generate_octahedron();
  if (spec == "triangle") return generate_cycle(3);
  if (spec.rfind("grid:", 0) == 0) {
    auto body = spec.substr(5);
    auto x = body.find('x');
    if (x == std::string::npos) throw validation_error("grid spec must be grid:WxH");
    return generate_grid(std::stoi(body.substr(0, x)), std::stoi(body.substr(x + 1)));
  }
  if (spec.rfind("cycle:", 0) == 0) return generate_cycle(std::stoi(spec.substr(6)));
  if (spec.rfind("power:", 0) == 0) {
    auto body = spec.substr(6);
    auto colon = body.rfind(':');
    if (colon == std::string::npos) throw validation_error("power spec must be power:SPEC:K");
    EmbeddedGraph base = resolve_graph(body.substr(0, colon));
    return disjoint_power(base, std::stoi(body.substr(colon + 1)));
  }
  return load_graph(spec);
}

Pinning load_pinning(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open pin file: " + path);
  json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("pin file parse error: ") + e.what());
  }
  Pinning pin;
  for (const auto& entry : j) {
    if (!entry.is_array() || entry.size() != 2)
      throw validation_error("pin entries must be [vertex, spin]");
    pin[entry[0].get<int>()] = entry[1].get<int>();
  }
  return pin;
}

Configuration load_config(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open configuration file: " + path);
  json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("config parse error: ") + e.what());
  }
  Configuration sigma;
  for (const auto& v : j) {
    int s = v.get<int>();
    if (s != 0 && s != 1) throw validation_error("configuration entries must be 0/1");
    sigma.push_back(s);
  }
  if (static_cast<int>(sigma.size()) != n)
    throw validation_error("configuration length " + std::to_string(sigma.size()) +
                           " does not match vertex count " + std::to_string(n));
  return sigma;
}

Gadget resolve_gadget(int k, int d, int nu) {
  if (nu > 0) {
    if (k > 0 || d > 0) throw validation_error("give either --nu or --k/--d, not both");
    return build_gadget_nu(nu);
  }
  if (k > 0 && d > 0) return build_gadget(k, d);
  throw validation_error("gadget needs --nu or both --k and --d");
}

json rational_json(const Rational& q) {
  return json{{"exact", rational_string(q)}, {"decimal", to_double(q)}};
}

json weight_json(const Rational& q) { return json{{"exact", rational_string(q)}}; }

json weight_json(const LogWeight& w) {
  json j;
  j["log"] = w.zero_flag ? 0.0 : w.lg;
  j["zero"] = w.zero_flag;
  return j;
}

// ---- output -----------------------------------------------------------------

void flatten(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items())
      flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else {
    out << prefix << "," << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

void emit(const json& j, const GlobalOpts& g) {
  if (g.format == "csv") {
    flatten(j, "", std::cout);
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::phase0: return "phase0";
    case Phase::phase1: return "phase1";
    default: return "none";
  }
}

const char* kind_name(ContourKind k) {
  switch (k) {
    case ContourKind::closed_simple: return "closed-simple";
    case ContourKind::boundary_simple: return "boundary-simple";
    default: return "cross";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-spin partition functions on planar graphs"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--format", g.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--seed", g.seed, "random seed (sampling commands)")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads for partitionable sums")
      ->check(CLI::Range(1, 64))
      ->capture_default_str();

  // ---- z-exact / z-dp / z-cylinder / marginal ----
  struct {
    std::string graph, pin, strategy = "min_fill", backend = "exact";
    ParamOpts params;
    int k = 0, d = 0, nu = 0, vertex = 0;
  } z;

  auto* z_exact = app.add_subcommand("z-exact", "partition function by exhaustive enumeration");
  z_exact->add_option("--graph", z.graph, "graph file or generator spec")->required();
  z_exact->add_option("--pin", z.pin, "pin file: JSON [[vertex, spin], ...]");
  add_param_opts(z_exact, z.params);

  auto* z_dp = app.add_subcommand("z-dp", "partition function by tree-decomposition DP");
  z_dp->add_option("--graph", z.graph)->required();
  z_dp->add_option("--pin", z.pin);
  z_dp->add_option("--strategy", z.strategy)->check(CLI::IsMember({"min_fill", "column_sweep"}));
  z_dp->add_option("--backend", z.backend)->check(CLI::IsMember({"exact", "log"}));
  add_param_opts(z_dp, z.params);

  auto* z_cyl = app.add_subcommand("z-cylinder", "partition function on the wrapped lattice");
  z_cyl->add_option("--nu", z.nu, "lattice size (C_nu)");
  z_cyl->add_option("--k", z.k);
  z_cyl->add_option("--d", z.d);
  z_cyl->add_option("--pin", z.pin);
  add_param_opts(z_cyl, z.params);

  auto* marg = app.add_subcommand("marginal", "Pr(spin(v) = 1) under the Gibbs distribution");
  marg->add_option("--graph", z.graph, "graph file/spec (tree-decomposition backend)");
  marg->add_option("--nu", z.nu, "use the cylinder backend on C_nu instead");
  marg->add_option("--k", z.k);
  marg->add_option("--d", z.d);
  marg->add_option("--vertex", z.vertex)->required();
  marg->add_option("--pin", z.pin);
  add_param_opts(marg, z.params);

  // ---- check-params / lambda-c ----
  ParamOpts chk;
  auto* check = app.add_subcommand("check-params", "evaluate the parameter-region conditions");
  add_param_opts(check, chk);

  long lc_delta = 3;
  auto* lc = app.add_subcommand("lambda-c", "critical tree activity for degree Delta");
  lc->add_option("--delta", lc_delta, "degree Delta >= 3")->required();

  // ---- estimate-p ----
  struct {
    int m = 2;
    ParamOpts params;
    std::string hat_beta, hat_gamma, hat_lambda;
  } ep;
  auto* est = app.add_subcommand("estimate-p", "finite-m phase marginals p_eq(m), p_neq(m)");
  est->add_option("--m", ep.m, "lattice size (2..6)")->required();
  add_param_opts(est, ep.params);
  est->add_option("--hat-beta", ep.hat_beta, "perturbed beta (optional)");
  est->add_option("--hat-gamma", ep.hat_gamma);
  est->add_option("--hat-lambda", ep.hat_lambda);

  // ---- gadget ----
  struct {
    int k = 0, d = 0, nu = 0;
    std::string config, out, start = "alternating0";
    std::uint64_t steps = 1000;
    ParamOpts params;
  } gd;
  auto* gadget = app.add_subcommand("gadget", "wrapped-lattice diagnostics");
  gadget->require_subcommand(1);
  auto add_gadget_geometry = [&](CLI::App* cmd) {
    cmd->add_option("--k", gd.k);
    cmd->add_option("--d", gd.d);
    cmd->add_option("--nu", gd.nu);
  };
  auto* gd_build = gadget->add_subcommand("build", "emit the gadget graph and terminals");
  add_gadget_geometry(gd_build);
  gd_build->add_option("--out", gd.out, "write the graph JSON here instead of stdout");
  auto* gd_cont = gadget->add_subcommand("contours", "extract contours of a configuration");
  add_gadget_geometry(gd_cont);
  gd_cont->add_option("--config", gd.config, "row-major 0/1 configuration file")->required();
  auto* gd_phase = gadget->add_subcommand("phase", "classify the phase of a configuration");
  gd_phase->add_option("--k", gd.k)->required();
  gd_phase->add_option("--d", gd.d)->required();
  gd_phase->add_option("--config", gd.config)->required();
  auto* gd_joint = gadget->add_subcommand("terminal-joint", "exact joint law of terminal spins");
  gd_joint->add_option("--k", gd.k)->required();
  gd_joint->add_option("--d", gd.d)->required();
  add_param_opts(gd_joint, gd.params);
  auto* gd_sample = gadget->add_subcommand("sample", "seeded single-site heat-bath run");
  add_gadget_geometry(gd_sample);
  add_param_opts(gd_sample, gd.params);
  gd_sample->add_option("--steps", gd.steps)->capture_default_str();
  gd_sample->add_option("--start", gd.start)
      ->check(CLI::IsMember({"alternating0", "alternating1", "zero"}))
      ->capture_default_str();
  gd_sample->add_option("--out", gd.out, "write the final configuration here");

  // ---- reduce ----
  struct {
    std::string graph, out = "instance";
    long k1 = 1, k2 = 1, d = 1, n = 0, h = 0;
    std::string p_eq = "7/10", p_neq = "3/10", z_ratio, lambda_hat;
    ParamOpts params;
  } rd;
  auto* reduce = app.add_subcommand("reduce", "hardness-reduction instances");
  reduce->require_subcommand(1);
  auto* rd_build = reduce->add_subcommand("build", "construct J and J' from a cubic planar graph");
  rd_build->add_option("--graph", rd.graph)->required();
  rd_build->add_option("--k1", rd.k1)->capture_default_str();
  rd_build->add_option("--k2", rd.k2)->capture_default_str();
  rd_build->add_option("--d", rd.d)->capture_default_str();
  rd_build->add_option("--out", rd.out, "output file prefix")->capture_default_str();
  auto* rd_ident = reduce->add_subcommand("identity", "verify the exact reduction identity");
  rd_ident->add_option("--graph", rd.graph)->required();
  rd_ident->add_option("--p-eq", rd.p_eq)->capture_default_str();
  rd_ident->add_option("--p-neq", rd.p_neq)->capture_default_str();
  rd_ident->add_option("--k1", rd.k1)->capture_default_str();
  rd_ident->add_option("--k2", rd.k2)->capture_default_str();
  add_param_opts(rd_ident, rd.params);
  auto* rd_decide = reduce->add_subcommand("decide", "threshold an approximate ratio");
  rd_decide->add_option("--set-size", rd.h, "candidate independent-set size")->required();
  rd_decide->add_option("--z-ratio", rd.z_ratio)->required();
  rd_decide->add_option("--lambda-hat", rd.lambda_hat)->required();
  rd_decide->add_option("--n", rd.n)->required();

  // ---- log-pras ----
  struct {
    std::string graph, epsilon = "1/2";
    ParamOpts params;
    std::string beta_plus, beta_minus, gamma_plus, gamma_minus, lambda_plus, lambda_minus;
  } lp;
  auto* pras = app.add_subcommand("log-pras", "approximation scheme for log Z");
  pras->add_option("--graph", lp.graph)->required();
  pras->add_option("--epsilon", lp.epsilon)->capture_default_str();
  add_param_opts(pras, lp.params);
  pras->add_option("--beta-plus", lp.beta_plus);
  pras->add_option("--beta-minus", lp.beta_minus);
  pras->add_option("--gamma-plus", lp.gamma_plus);
  pras->add_option("--gamma-minus", lp.gamma_minus);
  pras->add_option("--lambda-plus", lp.lambda_plus);
  pras->add_option("--lambda-minus", lp.lambda_minus);

  // ---- verify ----
  struct {
    std::string graph, strategy = "min_fill";
  } vf;
  auto* verify = app.add_subcommand("verify", "validate a graph and its decomposition");
  verify->add_option("--graph", vf.graph)->required();
  verify->add_option("--strategy", vf.strategy)
      ->check(CLI::IsMember({"min_fill", "column_sweep"}));

  // let global flags (--format/--seed/--threads) appear after subcommands
  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (auto* nested : sub->get_subcommands({})) nested->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*z_exact) {
      EmbeddedGraph graph = resolve_graph(z.graph);
      Pinning pin = z.pin.empty() ? Pinning{} : load_pinning(z.pin);
      emit(weight_json(brute_force_Z(graph, z.params.parse(), pin)), g);
    } else if (*z_dp) {
      EmbeddedGraph graph = resolve_graph(z.graph);
      Pinning pin = z.pin.empty() ? Pinning{} : load_pinning(z.pin);
      auto strat = z.strategy == "min_fill" ? DecompositionStrategy::min_fill
                                            : DecompositionStrategy::column_sweep;
      TreeDecomposition td = build_tree_decomposition(graph, strat);
      if (z.backend == "exact") {
        emit(weight_json(dp_Z(graph, td, z.params.parse(), pin)), g);
      } else {
        emit(weight_json(dp_Z_log(graph, td, z.params.parse(), pin)), g);
      }
    } else if (*z_cyl) {
      Gadget gad = resolve_gadget(z.k, z.d, z.nu);
      Pinning pin = z.pin.empty() ? Pinning{} : load_pinning(z.pin);
      emit(weight_json(cylinder_Z(gad, z.params.parse(), pin)), g);
    } else if (*marg) {
      Pinning pin = z.pin.empty() ? Pinning{} : load_pinning(z.pin);
      Rational m;
      if (!z.graph.empty()) {
        EmbeddedGraph graph = resolve_graph(z.graph);
        m = marginal(graph, build_min_fill(graph), z.params.parse(), pin, z.vertex);
      } else {
        Gadget gad = resolve_gadget(z.k, z.d, z.nu);
        m = cylinder_marginal(gad, z.params.parse(), pin, z.vertex);
      }
      emit(rational_json(m), g);
    } else if (*check) {
      Condition1 r = check_condition1(chk.parse());
      emit(json{{"satisfied", r.satisfied}, {"violations", r.violations}}, g);
    } else if (*lc) {
      emit(rational_json(lambda_c(lc_delta)), g);
    } else if (*est) {
      std::optional<SpinParams> hat;
      if (!ep.hat_beta.empty() || !ep.hat_gamma.empty() || !ep.hat_lambda.empty()) {
        SpinParams base = ep.params.parse();
        hat = SpinParams{ep.hat_beta.empty() ? base.beta : parse_rational(ep.hat_beta),
                         ep.hat_gamma.empty() ? base.gamma : parse_rational(ep.hat_gamma),
                         ep.hat_lambda.empty() ? base.lambda : parse_rational(ep.hat_lambda)};
      }
      PhaseMarginals pm = estimate_p(ep.m, ep.params.parse(), hat);
      json out;
      out["m"] = pm.m;
      out["p_eq"] = rational_json(pm.p_eq_m);
      out["p_neq"] = rational_json(pm.p_neq_m);
      emit(out, g);
    } else if (*gadget) {
      if (*gd_build) {
        Gadget gad = resolve_gadget(gd.k, gd.d, gd.nu);
        json out;
        out["nu"] = gad.nu;
        if (gad.k > 0) {
          out["k"] = gad.k;
          out["d"] = gad.d;
          json terms = json::array();
          for (Vertex t : gad.terminals()) {
            auto [x, y] = gad.xy(t);
            terms.push_back(json{{"id", t}, {"x", x}, {"y", y}, {"parity", gad.parity(t)}});
          }
          out["terminals"] = terms;
        }
        out["graph"] = graph_to_json(gad.graph);
        if (!gd.out.empty()) {
          std::ofstream f(gd.out);
          f << graph_to_json(gad.graph).dump(2) << "\n";
          out["graph"] = gd.out;  // wrote to file; echo the path instead
        }
        emit(out, g);
      } else if (*gd_cont) {
        Gadget gad = resolve_gadget(gd.k, gd.d, gd.nu);
        Configuration sigma = load_config(gd.config, gad.graph.n);
        auto contours = extract_contours(gad, sigma);
        json arr = json::array();
        for (const auto& c : contours) {
          json jc;
          jc["kind"] = kind_name(c.kind);
          jc["length"] = c.length();
          jc["wraps"] = c.wraps;
          json trail = json::array();
          for (auto [x2, y2] : doubled_trail(gad, c)) trail.push_back({x2, y2});
          jc["trail"] = trail;
          arr.push_back(jc);
        }
        emit(json{{"nu", gad.nu}, {"count", contours.size()}, {"contours", arr}}, g);
      } else if (*gd_phase) {
        Gadget gad = build_gadget(gd.k, gd.d);
        Configuration sigma = load_config(gd.config, gad.graph.n);
        emit(json{{"phase", phase_name(classify_phase(gad, sigma))}}, g);
      } else if (*gd_joint) {
        Gadget gad = build_gadget(gd.k, gd.d);
        TerminalLaw law = terminal_joint(gad, gd.params.parse());
        json rows = json::array();
        for (const auto& [tau, pr] : law) {
          rows.push_back(json{{"tau", tau},
                              {"p", rational_string(pr)},
                              {"decimal", to_double(pr)}});
        }
        json terms = json::array();
        for (Vertex t : gad.terminals()) terms.push_back(t);
        emit(json{{"terminals", terms}, {"law", rows}}, g);
      } else if (*gd_sample) {
        Gadget gad = resolve_gadget(gd.k, gd.d, gd.nu);
        GlauberSampler sampler(gad, gd.params.parse(), g.seed);
        if (gd.start == "alternating0")
          sampler.set_config(alternating_config(gad, 0));
        else if (gd.start == "alternating1")
          sampler.set_config(alternating_config(gad, 1));
        sampler.run(gd.steps);
        json out;
        out["nu"] = gad.nu;
        out["seed"] = g.seed;
        out["steps"] = gd.steps;
        ConfigStats st = gadget_stats(gad, sampler.config());
        out["ell"] = st.ell;
        if (gad.k > 0 && gad.d % 4 == 0)
          out["phase"] = phase_name(classify_phase(gad, sampler.config()));
        if (!gd.out.empty()) {
          std::ofstream f(gd.out);
          f << json(sampler.config()).dump() << "\n";
          out["config"] = gd.out;
        } else {
          out["config"] = sampler.config();
        }
        emit(out, g);
      }
    } else if (*reduce) {
      if (*rd_build) {
        EmbeddedGraph graph = resolve_graph(rd.graph);
        ReductionInstance inst = build_instance(graph, rd.k1, rd.k2, rd.d);
        std::string jf = rd.out + ".J.json", jpf = rd.out + ".Jprime.json",
                    tf = rd.out + ".terminals.json";
        {
          std::ofstream f(jf);
          f << graph_to_json(inst.J).dump() << "\n";
        }
        {
          std::ofstream f(jpf);
          f << graph_to_json(inst.Jprime).dump() << "\n";
        }
        {
          json tm;
          tm["T0"] = inst.T0;
          tm["T1"] = inst.T1;
          tm["bristles"] = inst.bristle;
          std::ofstream f(tf);
          f << tm.dump() << "\n";
        }
        json out;
        out["n"] = graph.n;
        out["k1"] = inst.k1;
        out["k2"] = inst.k2;
        out["d"] = inst.d;
        out["k"] = inst.k;
        out["nu"] = inst.nu;
        out["J"] = json{{"vertices", inst.J.n}, {"edges", inst.J.num_edges()}};
        out["Jprime"] = json{{"vertices", inst.Jprime.n}, {"edges", inst.Jprime.num_edges()}};
        out["files"] = json::array({jf, jpf, tf});
        emit(out, g);
      } else if (*rd_ident) {
        EmbeddedGraph graph = resolve_graph(rd.graph);
        Rational lhs, rhs;
        bool ok = verify_identity(graph, rd.params.parse(), parse_rational(rd.p_eq),
                                  parse_rational(rd.p_neq), rd.k1, rd.k2, &lhs, &rhs,
                                  g.threads);
        json out;
        out["holds"] = ok;
        out["lhs"] = rational_string(lhs);
        out["rhs"] = rational_string(rhs);
        emit(out, g);
        if (!ok) return 1;
      } else if (*rd_decide) {
        Decision dec =
            decide_is(rd.h, parse_rational(rd.z_ratio), parse_rational(rd.lambda_hat), rd.n);
        const char* name = dec == Decision::yes ? "yes"
                           : dec == Decision::no ? "no"
                                                 : "indeterminate";
        emit(json{{"decision", name}}, g);
      }
    } else if (*pras) {
      EmbeddedGraph graph = resolve_graph(lp.graph);
      SpinParams p = lp.params.parse();
      BakerBounds b = BakerBounds::exact(p);
      auto maybe = [&](const std::string& s, Rational* slot) {
        if (!s.empty()) *slot = parse_rational(s);
      };
      maybe(lp.beta_plus, &b.beta_plus);
      maybe(lp.beta_minus, &b.beta_minus);
      maybe(lp.gamma_plus, &b.gamma_plus);
      maybe(lp.gamma_minus, &b.gamma_minus);
      maybe(lp.lambda_plus, &b.lambda_plus);
      maybe(lp.lambda_minus, &b.lambda_minus);
      auto [log_z_hat, cert] = log_pras(graph, parse_rational(lp.epsilon), b, p);
      json out;
      out["log_z_hat"] = log_z_hat;
      json jc;
      jc["n"] = cert.n;
      jc["m"] = cert.m;
      jc["k"] = cert.k;
      jc["delta"] = rational_string(cert.delta);
      jc["layer"] = cert.layer;
      jc["removed_vertices"] = cert.removed_vertices;
      jc["removed_incidences"] = cert.removed_incidences;
      jc["width"] = cert.width;
      jc["log_upper_factor"] = cert.log_upper_factor;
      out["certificate"] = jc;
      emit(out, g);
    } else if (*verify) {
      EmbeddedGraph graph = resolve_graph(vf.graph);
      json out;
      out["valid"] = true;
      out["n"] = graph.n;
      out["edges"] = graph.num_edges();
      out["faces"] = graph.trace_faces().size();
      out["components"] = graph.num_components();
      auto strat = vf.strategy == "min_fill" ? DecompositionStrategy::min_fill
                                             : DecompositionStrategy::column_sweep;
      TreeDecomposition td = build_tree_decomposition(graph, strat);
      std::string why;
      bool ok = verify_decomposition(graph, td, &why);
      out["decomposition"] =
          json{{"strategy", vf.strategy}, {"width", td.width()}, {"valid", ok}};
      emit(out, g);
    }
  } catch (const resource_limit_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
