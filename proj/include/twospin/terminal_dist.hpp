#pragma once

#include <map>
#include <vector>

#include "twospin/gadget.hpp"

namespace twospin {

/// Exact distribution over terminal spin vectors; keys are 0/1 vectors
/// indexed by the gadget's terminals in increasing x order.
using TerminalLaw = std::map<std::vector<int>, Rational>;

/// Exact joint law of the terminal spins under the Gibbs distribution,
/// computed by pinning each terminal pattern and normalising.
inline TerminalLaw terminal_joint(const Gadget& g, const SpinParams& p) {
  g.require_kd();
  if (g.nu > 10) throw resource_limit_error("terminal_joint limited to nu <= 10");
  auto terms = g.terminals();
  int t = static_cast<int>(terms.size());
  TerminalLaw law;
  Rational total = 0;
  for (std::uint32_t mask = 0; mask < (1u << t); ++mask) {
    std::vector<int> tau(t);
    Pinning pin;
    for (int i = 0; i < t; ++i) {
      tau[i] = (mask >> i) & 1u;
      pin[terms[i]] = tau[i];
    }
    Rational z = cylinder_Z(g, p, pin);
    law[tau] = z;
    total += z;
  }
  if (total == 0) throw validation_error("terminal_joint: Z = 0");
  for (auto& [tau, w] : law) w /= total;
  return law;
}

enum class PhaseMode { phase0, phase1, mixture };

/// The idealised law: in phase s each parity-s terminal is 1 with
/// probability p_eq and each other terminal with p_neq, independently;
/// the mixture averages the two phases.
inline TerminalLaw ideal_terminal_law(const Gadget& g, const Rational& p_eq,
                                      const Rational& p_neq, PhaseMode mode) {
  g.require_kd();
  if (p_eq <= 0 || p_eq >= 1 || p_neq <= 0 || p_neq >= 1)
    throw validation_error("ideal law needs probabilities in (0,1)");
  auto terms = g.terminals();
  int t = static_cast<int>(terms.size());
  auto phase_law = [&](int s) {
    TerminalLaw law;
    for (std::uint32_t mask = 0; mask < (1u << t); ++mask) {
      std::vector<int> tau(t);
      Rational pr = 1;
      for (int i = 0; i < t; ++i) {
        tau[i] = (mask >> i) & 1u;
        const Rational& p1 = g.parity(terms[i]) == s ? p_eq : p_neq;
        pr *= tau[i] ? p1 : 1 - p1;
      }
      law[tau] = pr;
    }
    return law;
  };
  if (mode == PhaseMode::phase0) return phase_law(0);
  if (mode == PhaseMode::phase1) return phase_law(1);
  TerminalLaw l0 = phase_law(0), l1 = phase_law(1), mix;
  for (const auto& [tau, pr] : l0) mix[tau] = (pr + l1.at(tau)) / 2;
  return mix;
}

/// Total variation distance (1/2) sum |p - q|; supports must coincide.
inline Rational tv_distance(const TerminalLaw& a, const TerminalLaw& b) {
  if (a.size() != b.size()) throw validation_error("tv_distance: different supports");
  Rational s = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first) throw validation_error("tv_distance: different supports");
    Rational d = ia->second - ib->second;
    s += d < 0 ? -d : d;
  }
  return s / 2;
}

}  // namespace twospin
