#pragma once

#include <optional>

#include "twospin/gadget.hpp"

namespace twospin {

/// Finite-m phase marginals: p_eq(m) = Pr(sigma(0,0)=1 | boundary) and
/// p_neq(m) = Pr(sigma(1,0)=1 | boundary), the boundary being B_{0,m}
/// pinned to parity-0 ones. These bracket the idealised limits: p_eq(m)
/// is weakly decreasing in m and p_neq(m) weakly increasing.
struct PhaseMarginals {
  int m = 0;
  Rational p_eq_m;
  Rational p_neq_m;
  SpinParams params;
};

/// The estimator: compute Z, Z' (additionally pinning sigma(0,0)=1) and
/// Z'' (additionally pinning sigma(1,0)=1) on C_m with B_{0,m} pinned to
/// parity-0 ones, and return Z'/Z, Z''/Z as exact rationals. `hat` runs
/// the same computation at perturbed parameters.
inline PhaseMarginals estimate_p(int m, const SpinParams& p,
                                 const std::optional<SpinParams>& hat = std::nullopt) {
  if (m < 2) throw validation_error("estimate_p needs m >= 2");
  if (m > 6) throw resource_limit_error("estimate_p limited to m <= 6 (exact backends)");
  SpinParams use = hat.value_or(p);
  use.validate();
  PhaseMarginals out;
  out.m = m;
  out.params = use;
  if (use.lambda == 0) {
    // Degenerate activity: no configuration with a 1 has positive weight,
    // so both conditional probabilities vanish.
    out.p_eq_m = 0;
    out.p_neq_m = 0;
    return out;
  }
  Gadget g = build_gadget_nu(m);
  Pinning pin = pin_parity_ones(g, goalpost(g, 0, m), 0);
  Rational z = cylinder_Z(g, use, pin);
  if (z == 0) throw validation_error("estimate_p: Z = 0 (backend bug for lambda > 0)");
  Pinning pin_eq = pin, pin_neq = pin;
  pin_eq[g.id(0, 0)] = 1;
  pin_neq[g.id(1, 0)] = 1;
  out.p_eq_m = cylinder_Z(g, use, pin_eq) / z;
  out.p_neq_m = cylinder_Z(g, use, pin_neq) / z;
  return out;
}

/// Midpoints of the observed monotone ranges [p_eq(m_hi), p_eq(m_lo)] and
/// [p_neq(m_lo), p_neq(m_hi)]: rational stand-ins for the idealised
/// terminal probabilities, used by the idealised-law comparisons.
inline std::pair<Rational, Rational> bracket_midpoints(const SpinParams& p, int m_lo, int m_hi) {
  PhaseMarginals a = estimate_p(m_lo, p);
  PhaseMarginals b = estimate_p(m_hi, p);
  return {(a.p_eq_m + b.p_eq_m) / 2, (a.p_neq_m + b.p_neq_m) / 2};
}

/// Multiplicative bracket for 1-p from an approximation p_hat of p:
/// given the contract e^{-delta(1-p')/2} p_hat <= p <= e^{+...} p_hat with
/// p < p' < 1, the complement satisfies
///   (1-p_hat)/(1+delta/2)  <=  1-p  <=  (1-p_hat)/(1-delta/2),
/// which is inside the e^{+-delta} band since 1-delta/2 >= e^{-delta} and
/// 1+delta/2 <= e^{delta} on (0,1). All arithmetic exact.
struct ComplementBracket {
  Rational lower;
  Rational upper;
};

inline ComplementBracket complement_approx(const Rational& p_hat, const Rational& p_prime,
                                           const Rational& delta) {
  if (!(p_hat > 0 && p_hat < 1)) throw validation_error("complement_approx needs 0 < p_hat < 1");
  if (!(p_prime > 0 && p_prime < 1))
    throw validation_error("complement_approx needs 0 < p' < 1");
  if (!(delta > 0 && delta < 1)) throw validation_error("complement_approx needs delta in (0,1)");
  Rational c = 1 - p_hat;
  return {c / (1 + delta / 2), c / (1 - delta / 2)};
}

/// Expected number of long-contour hits, summed as a geometric series:
/// sum_{r>=1} r (3 rho)^r = 3 rho / (1 - 3 rho)^2, finite iff 3 rho < 1.
inline Rational contour_tail(const Rational& rho) {
  Rational x = 3 * rho;
  if (!(x < 1)) throw validation_error("contour tail diverges: 3*rho >= 1");
  return x / ((1 - x) * (1 - x));
}

/// The exact rational (0.238)^2 * (3*0.238)/(1 - 3*0.238)^2 < 1/2 that
/// drives the separation p_neq < 1/2 < p_eq.
inline Rational separation_bound() {
  Rational rho(119, 500);
  return rho * rho * contour_tail(rho);
}

}  // namespace twospin
