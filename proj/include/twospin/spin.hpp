#pragma once

#include <map>
#include <string>
#include <vector>

#include "twospin/graph.hpp"
#include "twospin/rational.hpp"
#include "twospin/weight.hpp"

namespace twospin {

/// The two-spin model parameters: edge weight beta for a 0-0 edge, gamma
/// for a 1-1 edge, and activity lambda per spin-1 vertex.
struct SpinParams {
  Rational beta;
  Rational gamma;
  Rational lambda;

  static SpinParams hard_core(const Rational& lambda) { return {1, 0, lambda}; }

  void validate() const {
    if (beta < 0 || gamma < 0 || lambda < 0)
      throw validation_error("spin parameters must be non-negative");
  }
};

using Configuration = std::vector<int>;   // spin per vertex, 0/1
using Pinning = std::map<Vertex, int>;    // forced spins

struct ConfigStats {
  long b = 0;       // edges with both endpoints 0
  long c = 0;       // edges with both endpoints 1
  long ell = 0;     // spin-1 vertices
  long b_side = 0;  // restricted to gadget side edges
  long c_side = 0;
};

inline ConfigStats config_stats(const EmbeddedGraph& g, const Configuration& sigma) {
  if (static_cast<int>(sigma.size()) != g.n)
    throw validation_error("configuration does not cover all vertices");
  ConfigStats s;
  for (const auto& [u, v] : g.edges) {
    if (sigma[u] == 0 && sigma[v] == 0) ++s.b;
    if (sigma[u] == 1 && sigma[v] == 1) ++s.c;
  }
  for (int x : sigma)
    if (x == 1) ++s.ell;
  return s;
}

/// w_G(sigma) = beta^b gamma^c lambda^ell with the convention 0^0 = 1.
inline Rational config_weight(const EmbeddedGraph& g, const Configuration& sigma,
                              const SpinParams& p) {
  ConfigStats s = config_stats(g, sigma);
  return pow_rational(p.beta, s.b) * pow_rational(p.gamma, s.c) * pow_rational(p.lambda, s.ell);
}

/// Outcome of the parameter-region check; all five clauses are evaluated
/// with exact rational arithmetic (fractional powers cleared by raising
/// both sides to the 4th / 8th power).
struct Condition1 {
  bool satisfied = true;
  std::vector<std::string> violations;
};

inline Condition1 check_condition1(const SpinParams& p) {
  p.validate();
  Condition1 r;
  const Rational bound(119, 500);  // 0.238
  auto violated = [&](const std::string& msg) {
    r.satisfied = false;
    r.violations.push_back(msg);
  };
  if (!(p.lambda >= 1)) violated("lambda >= 1 fails");
  if (!(p.beta >= 1)) violated("beta >= 1 fails");
  if (!(p.gamma < 1)) violated("1 > gamma fails");
  if (!(p.beta * p.gamma < 1)) violated("beta*gamma < 1 fails");
  // beta * lambda^(-1/4) <= 0.238   <=>   beta^4 <= 0.238^4 * lambda
  if (!(pow_rational(p.beta, 4) <= pow_rational(bound, 4) * p.lambda))
    violated("beta*lambda^(-1/4) <= 0.238 fails");
  // gamma * lambda^(3/8) <= 0.238   <=>   gamma^8 * lambda^3 <= 0.238^8
  if (!(pow_rational(p.gamma, 8) * pow_rational(p.lambda, 3) <= pow_rational(bound, 8)))
    violated("gamma*lambda^(3/8) <= 0.238 fails");
  return r;
}

/// Critical tree activity (Delta-1)^(Delta-1) / (Delta-2)^Delta.
inline Rational lambda_c(long delta) {
  if (delta < 3) throw validation_error("lambda_c needs Delta >= 3");
  return Rational(pow_rational(Rational(delta - 1), delta - 1) /
                  pow_rational(Rational(delta - 2), delta));
}

/// Parameter shift for Delta-regular graphs:
/// Z_{beta,gamma,lambda}(G) = lambda^{m/Delta} Z_{beta lambda^{-1/Delta}, gamma lambda^{1/Delta}, 1}(G).
/// The shifted parameters are irrational in general, so they are kept as
/// (coefficient, root exponent) pairs with exact values filled in when
/// lambda happens to be a perfect Delta-th power.
struct RegularShift {
  long delta = 0;
  long m = 0;
  Rational lambda_base;              // root base
  Rational beta_coeff, gamma_coeff;  // beta' = beta_coeff * lambda^(-1/Delta), etc.
  int beta_root = -1;                // exponent of lambda^(1/Delta) in beta'
  int gamma_root = +1;

  bool exact_available = false;
  SpinParams exact_params;  // valid when exact_available
  Rational exact_scale;

  double log_scale = 0.0;  // (m/Delta) * ln(lambda)
  bool beta_shifted_zero = false;
  double log_beta_shifted = 0.0;
  bool gamma_shifted_zero = false;
  double log_gamma_shifted = 0.0;
};

inline RegularShift regular_shift(const SpinParams& p, long delta, long m) {
  if (delta < 3) throw validation_error("regular_shift needs Delta >= 3");
  if (p.lambda <= 0) throw validation_error("regular_shift needs lambda > 0");
  RegularShift r;
  r.delta = delta;
  r.m = m;
  r.lambda_base = p.lambda;
  r.beta_coeff = p.beta;
  r.gamma_coeff = p.gamma;
  Rational root;
  if (exact_root(p.lambda, static_cast<unsigned long>(delta), &root)) {
    Rational check = pow_rational(root, delta);
    if (check == p.lambda) {
      r.exact_available = true;
      r.exact_params = {p.beta / root, p.gamma * root, Rational(1)};
      r.exact_scale = pow_rational(root, m);
    }
  }
  double loglam = log_double(p.lambda);
  r.log_scale = loglam * static_cast<double>(m) / static_cast<double>(delta);
  if (p.beta == 0) {
    r.beta_shifted_zero = true;
  } else {
    r.log_beta_shifted = log_double(p.beta) - loglam / static_cast<double>(delta);
  }
  if (p.gamma == 0) {
    r.gamma_shifted_zero = true;
  } else {
    r.log_gamma_shifted = log_double(p.gamma) + loglam / static_cast<double>(delta);
  }
  return r;
}

}  // namespace twospin
