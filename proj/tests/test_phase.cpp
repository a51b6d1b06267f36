#include <catch2/catch_amalgamated.hpp>

#include "twospin/brute_force.hpp"
#include "twospin/enclosures.hpp"
#include "twospin/phase.hpp"

using namespace twospin;

TEST_CASE("estimate_p at m=2 matches a direct brute-force oracle") {
  SpinParams p = SpinParams::hard_core(312);
  PhaseMarginals est = estimate_p(2, p);

  Gadget g = build_gadget_nu(2);
  Pinning pin = pin_parity_ones(g, goalpost(g, 0, 2), 0);
  Rational z = brute_force_Z(g.graph, p, pin);
  Pinning pe = pin, pn = pin;
  pe[g.id(0, 0)] = 1;
  pn[g.id(1, 0)] = 1;
  CHECK(est.p_eq_m == brute_force_Z(g.graph, p, pe) / z);
  CHECK(est.p_neq_m == brute_force_Z(g.graph, p, pn) / z);

  // separation already at m = 2
  CHECK(est.p_eq_m > Rational(1, 2));
  CHECK(est.p_neq_m < Rational(1, 2));
}

TEST_CASE("degenerate lambda = 0 gives zero marginals") {
  PhaseMarginals est = estimate_p(2, SpinParams::hard_core(0));
  CHECK(est.p_eq_m == 0);
  CHECK(est.p_neq_m == 0);
}

TEST_CASE("monotone bracketing in m") {
  SpinParams p = SpinParams::hard_core(312);
  PhaseMarginals m2 = estimate_p(2, p);
  PhaseMarginals m3 = estimate_p(3, p);
  CHECK(m3.p_eq_m <= m2.p_eq_m);
  CHECK(m3.p_neq_m >= m2.p_neq_m);
  CHECK_THROWS_AS(estimate_p(1, p), validation_error);
  CHECK_THROWS_AS(estimate_p(7, p), resource_limit_error);
}

TEST_CASE("bracket midpoints sit inside the observed ranges") {
  SpinParams p = SpinParams::hard_core(312);
  auto [pe, pn] = bracket_midpoints(p, 2, 3);
  PhaseMarginals m2 = estimate_p(2, p);
  PhaseMarginals m3 = estimate_p(3, p);
  CHECK(pe <= m2.p_eq_m);
  CHECK(pe >= m3.p_eq_m);
  CHECK(pn >= m2.p_neq_m);
  CHECK(pn <= m3.p_neq_m);
  CHECK(pe > pn);
}

TEST_CASE("perturbation stability of the estimator") {
  // hatted parameters within e^{+-delta} factor-wise move p_eq(m) by at
  // most e^{+-delta(|E|+|V|)} (crude bound)
  SpinParams p = SpinParams::hard_core(312);
  Rational delta(1, 50);
  SpinParams hat{1, 0, Rational(312) * Rational(101, 100)};  // 1.01 <= e^{0.02}
  PhaseMarginals base = estimate_p(2, p);
  PhaseMarginals pert = estimate_p(2, p, hat);
  Gadget g = build_gadget_nu(2);
  long budget = g.graph.num_edges() + g.graph.n;
  Enclosure bound = exp_bounds(delta * budget);
  Rational ratio = pert.p_eq_m / base.p_eq_m;
  CHECK(ratio <= bound.hi);
  CHECK(ratio >= 1 / bound.hi);
}

TEST_CASE("complement bracket certifies the multiplicative band") {
  // p = 1/2, p' = 3/5, delta = 1/10, p_hat = p e^{delta(1-p')/2} = p e^{1/50}
  Rational p(1, 2), pp(3, 5), delta(1, 10);
  Enclosure shift = exp_bounds(Rational(1, 50));
  Rational p_hat = p * shift.hi;  // rational surrogate of the extreme case
  auto br = complement_approx(p_hat, pp, delta);
  CHECK(br.lower <= 1 - p);
  CHECK(br.upper >= 1 - p);
  // and the bracket is within the e^{+-delta} band around 1-p_hat
  Enclosure ed = exp_bounds(delta);
  CHECK(br.lower >= (1 - p_hat) / ed.hi);
  CHECK(br.upper <= (1 - p_hat) * ed.hi);

  // p_hat = p exactly: the bracket trivially contains 1-p
  auto exact_br = complement_approx(p, pp, delta);
  CHECK(exact_br.lower <= 1 - p);
  CHECK(exact_br.upper >= 1 - p);

  CHECK_THROWS_AS(complement_approx(Rational(1), pp, delta), validation_error);
  CHECK_THROWS_AS(complement_approx(p, pp, Rational(2)), validation_error);
}

TEST_CASE("the numeric bound behind the phase separation") {
  Rational v = separation_bound();
  CHECK(v < Rational(1, 2));
  CHECK(rational_string(v) == rational_string(Rational(119, 500) * Rational(119, 500) *
                                              Rational(357, 500) /
                                              (Rational(143, 500) * Rational(143, 500))));
  CHECK(to_double(v) == Catch::Approx(0.494436).margin(1e-4));

  // the geometric tail converges exactly when 3 rho < 1
  CHECK(contour_tail(Rational(119, 500)) > 0);
  CHECK_THROWS_AS(contour_tail(Rational(1, 3)), validation_error);
  CHECK_THROWS_AS(contour_tail(Rational(1, 2)), validation_error);
}
