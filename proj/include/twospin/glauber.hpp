#pragma once

#include <cstdint>
#include <random>

#include "twospin/gadget.hpp"

namespace twospin {

/// Single-site heat-bath dynamics on the gadget, for large-nu exploration
/// only (no mixing-time claims anywhere). Runs are deterministic per seed:
/// acceptance draws are 64-bit integers compared against exact rational
/// thresholds, so no platform-dependent floating point enters the chain.
class GlauberSampler {
 public:
  GlauberSampler(const Gadget& g, const SpinParams& p, std::uint64_t seed)
      : g_(g), p_(p), rng_(seed), sigma_(g.graph.n, 0) {
    p_.validate();
  }

  const Configuration& config() const { return sigma_; }
  void set_config(const Configuration& c) {
    if (static_cast<int>(c.size()) != g_.graph.n)
      throw validation_error("configuration does not cover all vertices");
    sigma_ = c;
  }

  void step() {
    Vertex v = static_cast<Vertex>(rng_() % static_cast<std::uint64_t>(g_.graph.n));
    int n0 = 0, n1 = 0;
    for (Vertex w : g_.graph.rotation[v]) (sigma_[w] ? n1 : n0)++;
    // Pr(spin 1) = lambda*gamma^n1 / (lambda*gamma^n1 + beta^n0)
    Rational a = p_.lambda * pow_rational(p_.gamma, n1);
    Rational b = pow_rational(p_.beta, n0);
    Rational denom = a + b;
    if (denom == 0) return;  // both spins weight 0; leave the site alone
    // threshold = floor(2^64 * a/denom); draw < threshold  =>  spin 1
    Integer num = a.get_num() * denom.get_den();
    Integer den = a.get_den() * denom.get_num();
    Integer thr = (num << 64) / den;
    Integer draw(static_cast<unsigned long>(rng_()));
    sigma_[v] = draw < thr ? 1 : 0;
  }

  void run(std::uint64_t steps) {
    for (std::uint64_t i = 0; i < steps; ++i) step();
  }

 private:
  const Gadget& g_;
  SpinParams p_;
  std::mt19937_64 rng_;
  Configuration sigma_;
};

}  // namespace twospin
