#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "twospin/brute_force.hpp"
#include "twospin/dp.hpp"
#include "twospin/generate.hpp"
#include "twospin/gadget.hpp"
#include "twospin/boundaries.hpp"
#include "twospin/glauber.hpp"
#include "twospin/levels.hpp"
#include "twospin/terminal_dist.hpp"

using namespace twospin;

namespace {

Configuration random_config(const Gadget& g, std::mt19937_64& rng) {
  Configuration sigma(g.graph.n);
  for (auto& s : sigma) s = static_cast<int>(rng() & 1u);
  return sigma;
}

}  // namespace

TEST_CASE("gadget sizes, terminals, embedding") {
  Gadget g = build_gadget(1, 2);
  CHECK(g.nu == 4);
  CHECK(g.graph.n == 40);  // 2*4*5
  CHECK(g.parity1_terminals() == std::vector<Vertex>{g.id(1, 0)});
  CHECK(g.parity0_terminals() == std::vector<Vertex>{g.id(4, 0)});

  Gadget g5 = build_gadget_nu(5);
  CHECK(g5.graph.n == 60);
  CHECK_NOTHROW(g5.graph.validate());
  // annulus face count: 2 nu^2 squares + inner disk + outer face
  CHECK(g5.graph.trace_faces().size() == 2 * 5 * 5 + 2);
  for (Vertex v = 0; v < g5.graph.n; ++v) CHECK(g5.graph.degree(v) <= 4);

  Gadget g21 = build_gadget(2, 1);
  CHECK(g21.nu == 4);
  CHECK(g21.parity1_terminals() == std::vector<Vertex>{g21.id(1, 0), g21.id(5, 0)});
  CHECK(g21.parity0_terminals() == std::vector<Vertex>{g21.id(2, 0), g21.id(6, 0)});

  CHECK_THROWS_AS(build_gadget(0, 1), validation_error);
}

TEST_CASE("annulus embedding peels ring by ring") {
  // row 0 is the declared unbounded face, so level(x,y) = y
  for (int nu : {2, 3, 5}) {
    Gadget g = build_gadget_nu(nu);
    auto lab = compute_levels(g.graph);
    for (Vertex v = 0; v < g.graph.n; ++v) {
      auto [x, y] = g.xy(v);
      CHECK(lab.level[v] == y);
    }
    // and the labelling survives a serialization round-trip
    EmbeddedGraph back = graph_from_json(graph_to_json(g.graph));
    CHECK(compute_levels(back).level == lab.level);
  }
}

TEST_CASE("cylinder agrees with dp under goalpost pins at nu = 4") {
  Gadget g = build_gadget_nu(4);
  SpinParams p = SpinParams::hard_core(Rational(7, 2));
  Pinning pin = pin_parity_ones(g, goalpost(g, 0, 4), 0);
  TreeDecomposition td = build_min_fill(g.graph);
  CHECK(cylinder_Z(g, p, pin) == dp_Z(g.graph, td, p, pin));
  Pinning pin1 = pin;
  pin1[g.id(0, 0)] = 1;
  CHECK(cylinder_Z(g, p, pin1) == dp_Z(g.graph, td, p, pin1));
}

TEST_CASE("goalposts match the reference picture on C_5") {
  Gadget g = build_gadget_nu(5);
  // the 9-vertex goalpost B_{1,2}
  std::set<Vertex> want;
  for (auto [x, y] : std::vector<std::pair<int, int>>{
           {-1, 0}, {-1, 1}, {-1, 2}, {0, 2}, {1, 2}, {2, 2}, {3, 2}, {3, 1}, {3, 0}})
    want.insert(g.id(x, y));
  CHECK(goalpost(g, 1, 2) == want);
  CHECK(goalpost(g, 1, 2).size() == 9);

  CHECK(goalpost(g, 3, 0) == std::set<Vertex>{g.id(3, 0)});

  // keyhole at m = nu: column x+nu plus the whole top row
  std::set<Vertex> keyhole = goalpost(g, 0, 5);
  std::set<Vertex> expect;
  for (int j = 0; j <= 5; ++j) expect.insert(g.id(5, j));
  for (int x = 0; x < 10; ++x) expect.insert(g.id(x, 5));
  CHECK(keyhole == expect);

  CHECK_THROWS_AS(goalpost(g, 0, 6), validation_error);
}

TEST_CASE("balls follow the wrapped Chebyshev distance") {
  Gadget g = build_gadget_nu(4);
  auto u = ball(g, 0, 1);
  CHECK(u.size() == 6);  // columns -1,0,1 x rows 0,1
  CHECK(u.count(g.id(7, 1)) == 1);
  CHECK(u.count(g.id(0, 2)) == 0);
  // h = nu covers everything: the x-span wraps fully
  CHECK(ball(g, 0, 4).size() == static_cast<std::size_t>(g.graph.n));
}

TEST_CASE("parity classification of ones") {
  Gadget g = build_gadget_nu(3);
  Configuration alt = alternating_config(g, 1);  // ones at odd x+y
  std::set<Vertex> all;
  for (Vertex v = 0; v < g.graph.n; ++v) all.insert(v);
  CHECK(parity_ones(g, alt, all) == ParityClass::parity1);

  Configuration zero(g.graph.n, 0);
  CHECK(parity_ones(g, zero, all) == ParityClass::mixed);

  // flipping one vertex leaves its neighbours' classification intact
  Configuration flip = alt;
  Vertex centre = g.id(2, 1);
  flip[centre] = 1 - flip[centre];
  std::set<Vertex> nbrs(g.graph.rotation[centre].begin(), g.graph.rotation[centre].end());
  CHECK(parity_ones(g, flip, nbrs) == ParityClass::parity1);
  CHECK(parity_ones(g, flip, all) == ParityClass::mixed);
  CHECK_THROWS_AS(parity_ones(g, alt, {}), validation_error);
}

TEST_CASE("sigma* of the basic configurations") {
  Gadget g = build_gadget_nu(3);
  CHECK(sigma_star(g, alternating_config(g, 0)).empty());
  CHECK(sigma_star(g, alternating_config(g, 1)).empty());

  Configuration zero(g.graph.n, 0);
  CHECK(sigma_star(g, zero).size() == g.graph.edges.size());

  // one interior flip turns exactly the 4 incident edges monochromatic
  Configuration flip = alternating_config(g, 0);
  flip[g.id(2, 1)] ^= 1;
  CHECK(sigma_star(g, flip).size() == 4);
}

TEST_CASE("duality is an involution matching primal edges") {
  Gadget g = build_gadget_nu(3);
  DualGadget dual(g.nu);
  std::set<Edge> seen;
  for (const auto& e : g.graph.edges) {
    Edge de = dual.dual_of(g, e);
    CHECK(dual.primal_of(g, de) == e);
    seen.insert(de);
    auto [x1, y1] = dual.xy(de.first);
    auto [x2, y2] = dual.xy(de.second);
    if (y1 == y2) {  // horizontal dual edges avoid the outermost rows
      CHECK(y1 >= 0);
      CHECK(y1 <= g.nu - 1);
    }
  }
  CHECK(seen.size() == g.graph.edges.size());  // bijection
}

TEST_CASE("cylinder backend equals brute force on C_2 and dp on C_3") {
  Gadget c2 = build_gadget_nu(2);
  for (const SpinParams& p :
       {SpinParams::hard_core(1), SpinParams{2, Rational(1, 2), 3}, SpinParams::hard_core(312)}) {
    CHECK(cylinder_Z(c2, p) == brute_force_Z(c2.graph, p));
  }
  Pinning pin = pin_parity_ones(c2, goalpost(c2, 0, 2), 0);
  CHECK(cylinder_Z(c2, SpinParams::hard_core(5), pin) ==
        brute_force_Z(c2.graph, SpinParams::hard_core(5), pin));

  Gadget c3 = build_gadget_nu(3);
  SpinParams p{1, 0, Rational(7, 2)};
  CHECK(cylinder_Z(c3, p) == dp_Z(c3.graph, build_min_fill(c3.graph), p));
}

TEST_CASE("fully pinned alternating configuration weighs lambda^(nu(nu+1))") {
  Gadget c3 = build_gadget_nu(3);
  SpinParams p = SpinParams::hard_core(Rational(9, 4));
  Pinning pin;
  for (Vertex v = 0; v < c3.graph.n; ++v) pin[v] = c3.parity(v) == 0 ? 1 : 0;
  CHECK(cylinder_Z(c3, p, pin) == pow_rational(p.lambda, 3 * 4));
}

TEST_CASE("ell identity: alternating, all-ones, and random configurations") {
  Gadget c3 = build_gadget_nu(3);
  Configuration alt = alternating_config(c3, 0);
  auto st = gadget_stats(c3, alt);
  CHECK(st.ell == 3 * 4);
  CHECK(st.b == 0);
  CHECK(st.c == 0);
  CHECK(st.b_side == 0);
  CHECK(st.c_side == 0);
  CHECK(ell_identity_check(c3, alt));

  Configuration ones(c3.graph.n, 1);
  CHECK(ell_identity_check(c3, ones));

  Gadget c4 = build_gadget_nu(4);
  std::mt19937_64 rng(20240817);
  for (int t = 0; t < 1000; ++t) CHECK(ell_identity_check(c4, random_config(c4, rng)));

  Gadget c2 = build_gadget_nu(2);
  CHECK_THROWS_AS(ell_identity_check(c2, alternating_config(c2, 0)), validation_error);
}

TEST_CASE("terminal joint: normalization, bounds, parity-swap symmetry") {
  Gadget g = build_gadget(1, 1);  // nu = 2, terminals (1,0) and (2,0)
  SpinParams p = SpinParams::hard_core(3);
  TerminalLaw law = terminal_joint(g, p);
  CHECK(law.size() == 4);
  Rational total = 0;
  for (const auto& [tau, pr] : law) total += pr;
  CHECK(total == 1);

  // hard-core single-site bound: marginal <= lambda/(1+lambda)
  Gadget g2 = build_gadget(1, 2);
  SpinParams p312 = SpinParams::hard_core(312);
  TerminalLaw law2 = terminal_joint(g2, p312);
  auto terms = g2.terminals();
  for (std::size_t i = 0; i < terms.size(); ++i) {
    Rational m = 0;
    for (const auto& [tau, pr] : law2)
      if (tau[i]) m += pr;
    CHECK(m > 0);
    CHECK(m <= p312.lambda / (1 + p312.lambda));
  }

  // the reflection x -> 2d+1-x is an automorphism exchanging the parity
  // classes and the two terminals; the joint is invariant under the
  // induced relabelling
  {
    auto t = g2.terminals();  // increasing x: (1,0) parity-1, (4,0) parity-0
    REQUIRE(t.size() == 2);
    std::map<std::vector<int>, Rational> swapped;
    for (const auto& [tau, pr] : law2) swapped[{tau[1], tau[0]}] += pr;
    // exchanging parity classes maps the law onto itself
    CHECK(swapped == law2);
  }
}

TEST_CASE("ideal terminal law and tv distance") {
  Gadget g = build_gadget(1, 1);
  Rational pe(7, 10), pn(3, 10);
  TerminalLaw mix = ideal_terminal_law(g, pe, pn, PhaseMode::mixture);
  Rational total = 0;
  for (const auto& [tau, pr] : mix) total += pr;
  CHECK(total == 1);
  TerminalLaw l0 = ideal_terminal_law(g, pe, pn, PhaseMode::phase0);
  TerminalLaw l1 = ideal_terminal_law(g, pe, pn, PhaseMode::phase1);
  CHECK(tv_distance(mix, mix) == 0);
  CHECK(tv_distance(l0, l0) == 0);
  Rational d01 = tv_distance(l0, l1);
  CHECK(d01 > 0);
  CHECK(d01 <= 1);

  // point masses on distinct outcomes are at distance 1
  TerminalLaw a, b;
  a[{0, 0}] = 1;
  a[{1, 1}] = 0;
  b[{0, 0}] = 0;
  b[{1, 1}] = 1;
  CHECK(tv_distance(a, b) == 1);

  // (1/2,1/2) vs (1/4,3/4)
  TerminalLaw c, d;
  c[{0}] = Rational(1, 2);
  c[{1}] = Rational(1, 2);
  d[{0}] = Rational(1, 4);
  d[{1}] = Rational(3, 4);
  CHECK(tv_distance(c, d) == Rational(1, 4));
}

TEST_CASE("sampler settles into the phase it starts in at high activity") {
  // deterministic per seed, so the outcome is a frozen regression value:
  // at lambda = 312 heat-bath dynamics started in a pure parity pattern
  // keeps that phase over the whole run
  Gadget g = build_gadget(1, 4);  // nu = 8, d = 4
  SpinParams p = SpinParams::hard_core(312);
  GlauberSampler s(g, p, 5);
  s.set_config(alternating_config(g, 1));
  s.run(50000);
  CHECK(classify_phase(g, s.config()) == Phase::phase1);
}

TEST_CASE("hard-core single-site bound: marginals never exceed lambda/(1+lambda)") {
  for (const auto& graph : {generate_grid(3, 3), generate_prism()}) {
    SpinParams p = SpinParams::hard_core(Rational(7, 2));
    auto td = build_min_fill(graph);
    Rational cap = p.lambda / (1 + p.lambda);
    for (Vertex v = 0; v < graph.n; ++v) CHECK(marginal(graph, td, p, {}, v) <= cap);
  }
}

TEST_CASE("glauber sampler is deterministic per seed and respects hard-core") {
  Gadget g = build_gadget_nu(6);
  SpinParams p = SpinParams::hard_core(312);
  GlauberSampler s1(g, p, 42), s2(g, p, 42), s3(g, p, 43);
  s1.run(20000);
  s2.run(20000);
  s3.run(20000);
  CHECK(s1.config() == s2.config());
  CHECK(s1.config() != s3.config());  // overwhelmingly likely
  // no occupied edge in a hard-core trajectory endpoint
  const auto& sigma = s1.config();
  for (const auto& [u, v] : g.graph.edges) CHECK((sigma[u] & sigma[v]) == 0);
}
