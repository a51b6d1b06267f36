#include <catch2/catch_amalgamated.hpp>

#include "twospin/brute_force.hpp"
#include "twospin/dp.hpp"
#include "twospin/gadget.hpp"
#include "twospin/generate.hpp"
#include "twospin/spin.hpp"

using namespace twospin;

namespace {

Rational dp_of(const EmbeddedGraph& g, const SpinParams& p, const Pinning& pin = {}) {
  return dp_Z(g, build_min_fill(g), p, pin);
}

// independent-set count oracle by direct subset enumeration
long count_independent_sets(const EmbeddedGraph& g) {
  long cnt = 0;
  for (std::uint32_t mask = 0; mask < (1u << g.n); ++mask) {
    bool ok = true;
    for (const auto& [u, v] : g.edges)
      if (((mask >> u) & 1u) && ((mask >> v) & 1u)) {
        ok = false;
        break;
      }
    if (ok) ++cnt;
  }
  return cnt;
}

}  // namespace

TEST_CASE("condition (1) frontier at lambda = 312") {
  CHECK(check_condition1(SpinParams::hard_core(312)).satisfied);
  auto r = check_condition1(SpinParams::hard_core(311));
  CHECK_FALSE(r.satisfied);  // 0.238^4 * 311 < 1 exactly
  CHECK_FALSE(check_condition1({1, 1, 1}).satisfied);
  CHECK(pow_rational(Rational(119, 500), 4) * 311 < 1);
  CHECK(pow_rational(Rational(119, 500), 4) * 312 >= 1);
}

TEST_CASE("configuration weights with the 0^0 = 1 convention") {
  EmbeddedGraph one = generate_grid(1, 1);
  CHECK(config_weight(one, {1}, SpinParams::hard_core(2)) == 2);

  EmbeddedGraph edge = generate_grid(2, 1);
  CHECK(config_weight(edge, {1, 1}, {1, 0, 5}) == 0);

  EmbeddedGraph tri = generate_cycle(3);
  CHECK(config_weight(tri, {0, 0, 0}, {2, 0, 1}) == 8);
}

TEST_CASE("brute force Z: hard-core counts independent sets") {
  EmbeddedGraph tri = generate_cycle(3);
  CHECK(brute_force_Z(tri, SpinParams::hard_core(1)) == 4);
  CHECK(count_independent_sets(tri) == 4);

  EmbeddedGraph k4 = generate_k4();
  CHECK(brute_force_Z(k4, SpinParams::hard_core(1)) == 5);
  CHECK(count_independent_sets(k4) == 5);

  EmbeddedGraph one = generate_grid(1, 1);
  Rational lam(7, 3);
  CHECK(brute_force_Z(one, SpinParams::hard_core(lam)) == 1 + lam);

  // single edge, general parameters: beta + 2 lambda + gamma lambda^2
  EmbeddedGraph edge = generate_grid(2, 1);
  SpinParams p{Rational(5, 2), Rational(1, 3), Rational(4)};
  CHECK(brute_force_Z(edge, p) == p.beta + 2 * p.lambda + p.gamma * p.lambda * p.lambda);
}

TEST_CASE("dp_Z equals brute force, with and without pins") {
  std::vector<EmbeddedGraph> corpus{generate_grid(3, 3), generate_cycle(5), generate_k4(),
                                    generate_prism(), generate_cube(), generate_octahedron()};
  std::vector<SpinParams> params{SpinParams::hard_core(1), SpinParams::hard_core(Rational(7, 2)),
                                 {2, Rational(1, 2), 3}, {1, 0, 312}};
  for (const auto& g : corpus) {
    for (const auto& p : params) {
      CHECK(dp_of(g, p) == brute_force_Z(g, p));
      Pinning pin{{0, 1}, {g.n - 1, 0}};
      CHECK(dp_Z(g, build_min_fill(g), p, pin) == brute_force_Z(g, p, pin));
    }
  }
}

TEST_CASE("dp_Z with everything pinned to 0 gives beta^m") {
  EmbeddedGraph g = generate_grid(3, 2);
  SpinParams p{Rational(3, 2), Rational(1, 5), Rational(7)};
  Pinning pin;
  for (Vertex v = 0; v < g.n; ++v) pin[v] = 0;
  CHECK(dp_Z(g, build_min_fill(g), p, pin) == pow_rational(p.beta, g.num_edges()));
}

TEST_CASE("power law Z(k*G) = Z(G)^k") {
  for (const auto& base : {generate_k4(), generate_cycle(3)}) {
    SpinParams p{1, 0, 2};
    Rational z1 = dp_of(base, p);
    for (int k = 2; k <= 3; ++k) {
      EmbeddedGraph pw = disjoint_power(base, k);
      CHECK(dp_of(pw, p) == pow_rational(z1, k));
    }
  }
}

TEST_CASE("log backend agrees with exact within 1e-9 relative") {
  std::vector<EmbeddedGraph> corpus{generate_grid(4, 4), generate_prism(), generate_cycle(7)};
  for (const auto& g : corpus) {
    SpinParams p{2, Rational(1, 2), 3};
    auto td = build_min_fill(g);
    Rational exact = dp_Z(g, td, p);
    LogWeight lw = dp_Z_log(g, td, p);
    REQUIRE_FALSE(lw.is_zero());
    CHECK(std::abs(lw.lg - log_double(exact)) <= 1e-9 * std::abs(log_double(exact)) + 1e-12);
  }
}

TEST_CASE("Z is at least lambda^(greedy independent set) for hard-core") {
  for (const auto& g : {generate_grid(4, 4), generate_cube(), generate_octahedron()}) {
    SpinParams p = SpinParams::hard_core(3);
    std::set<Vertex> is;
    for (Vertex v = 0; v < g.n; ++v) {
      bool ok = true;
      for (Vertex w : g.rotation[v])
        if (is.count(w)) ok = false;
      if (ok) is.insert(v);
    }
    CHECK(dp_of(g, p) >= pow_rational(p.lambda, is.size()));
  }
}

TEST_CASE("marginals") {
  EmbeddedGraph one = generate_grid(1, 1);
  CHECK(marginal(one, build_min_fill(one), SpinParams::hard_core(2), {}, 0) == Rational(2, 3));

  EmbeddedGraph edge = generate_grid(2, 1);
  auto td = build_min_fill(edge);
  CHECK(marginal(edge, td, SpinParams::hard_core(1), {}, 0) == Rational(1, 3));
  CHECK(marginal(edge, td, SpinParams::hard_core(1), {}, 1) == Rational(1, 3));

  Pinning pin{{0, 1}};
  CHECK(marginal(edge, td, SpinParams::hard_core(1), pin, 0) == 1);

  // Z = 0 when both ends of an edge are pinned to 1 in the hard-core model
  Pinning both{{0, 1}, {1, 1}};
  CHECK_THROWS_AS(marginal(edge, td, SpinParams::hard_core(1), both, 0), validation_error);
}

TEST_CASE("lambda_c values") {
  CHECK(lambda_c(3) == 4);
  CHECK(lambda_c(4) == Rational(27, 16));
  CHECK(lambda_c(5) == Rational(256, 243));  // 4^4 / 3^5
  CHECK_THROWS_AS(lambda_c(2), validation_error);
}

TEST_CASE("regular shift: formula cases and exact validation on the octahedron") {
  auto r = regular_shift({1, 0, 16}, 4, 8);
  REQUIRE(r.exact_available);
  CHECK(r.exact_params.beta == Rational(1, 2));
  CHECK(r.exact_params.gamma == 0);
  CHECK(r.exact_params.lambda == 1);
  CHECK(r.exact_scale == 256);

  auto id = regular_shift({2, Rational(1, 2), 1}, 3, 10);
  REQUIRE(id.exact_available);
  CHECK(id.exact_params.beta == 2);
  CHECK(id.exact_params.gamma == Rational(1, 2));
  CHECK(id.exact_scale == 1);

  // octahedron is 4-regular with 12 edges: scale * Z_shifted == Z exactly
  EmbeddedGraph oct = generate_octahedron();
  auto s = regular_shift({1, 0, 16}, 4, oct.num_edges());
  REQUIRE(s.exact_available);
  Rational lhs = s.exact_scale * dp_of(oct, s.exact_params);
  CHECK(lhs == dp_of(oct, {1, 0, 16}));

  // log-domain validation at an irrational shift, relative 1e-9
  SpinParams p{1, 0, 312};
  auto rs = regular_shift(p, 4, oct.num_edges());
  CHECK_FALSE(rs.exact_available);
  LogEval ev{rs.beta_shifted_zero ? LogWeight::zero() : LogWeight::from_log(rs.log_beta_shifted),
             rs.gamma_shifted_zero ? LogWeight::zero() : LogWeight::from_log(rs.log_gamma_shifted),
             LogWeight::one()};
  LogWeight zs = dp_Z_eval(oct, build_min_fill(oct), ev, {}, 30);
  double lhs_log = rs.log_scale + zs.lg;
  double rhs_log = log_double(dp_of(oct, p));
  CHECK(std::abs(lhs_log - rhs_log) <= 1e-9 * std::abs(rhs_log));

  CHECK_THROWS_AS(regular_shift({1, 0, 2}, 2, 4), validation_error);
}

TEST_CASE("brute force size guard") {
  EmbeddedGraph g = generate_grid(8, 4);  // 32 vertices
  CHECK_THROWS_AS(brute_force_Z(g, SpinParams::hard_core(1)), resource_limit_error);
  Pinning pin{{0, 0}, {1, 0}};
  CHECK_NOTHROW(brute_force_Z(g, SpinParams::hard_core(1), pin));
}

TEST_CASE("dp guards: width limit and invalid decompositions") {
  EmbeddedGraph k4 = generate_k4();
  TreeDecomposition td = build_min_fill(k4);  // width 3
  CHECK_THROWS_AS(dp_Z_eval(k4, td, ExactEval(SpinParams::hard_core(1)), {}, 2),
                  resource_limit_error);

  TreeDecomposition broken = td;
  broken.bags[0].clear();  // destroys coverage
  CHECK_THROWS_AS(dp_Z(k4, broken, SpinParams::hard_core(1)), validation_error);

  Pinning bad{{99, 1}};
  CHECK_THROWS_AS(dp_Z(k4, td, SpinParams::hard_core(1), bad), validation_error);
}
