#pragma once

#include <optional>
#include <vector>

#include "twospin/dp.hpp"
#include "twospin/enclosures.hpp"
#include "twospin/levels.hpp"
#include "twospin/spin.hpp"
#include "twospin/tree_decomposition.hpp"

namespace twospin {

/// Rational brackets around the true parameters, hard-wired by the caller:
/// beta+ >= beta >= beta- >= 1, 1 > gamma+ >= gamma >= gamma- >= 0,
/// lambda+ >= lambda >= lambda- >= 1.
struct BakerBounds {
  Rational beta_plus, beta_minus;
  Rational gamma_plus, gamma_minus;
  Rational lambda_plus, lambda_minus;

  static BakerBounds exact(const SpinParams& p) {
    return {p.beta, p.beta, p.gamma, p.gamma, p.lambda, p.lambda};
  }

  void validate() const {
    if (!(beta_plus >= beta_minus && beta_minus >= 1))
      throw validation_error("need beta+ >= beta- >= 1");
    if (!(gamma_plus >= gamma_minus && gamma_minus >= 0 && gamma_plus < 1))
      throw validation_error("need 1 > gamma+ >= gamma- >= 0");
    if (!(lambda_plus >= lambda_minus && lambda_minus >= 1))
      throw validation_error("need lambda+ >= lambda- >= 1");
  }

  SpinParams clamp(const SpinParams& p) const {
    auto cl = [](const Rational& v, const Rational& lo, const Rational& hi) {
      return v < lo ? lo : (v > hi ? hi : v);
    };
    return {cl(p.beta, beta_minus, beta_plus), cl(p.gamma, gamma_minus, gamma_plus),
            cl(p.lambda, lambda_minus, lambda_plus)};
  }
};

/// Smallest k with k >= (32 log(2 lambda+) + 96 log(beta+)) / (eps log(1 + lambda-)).
/// The inequality is decided exactly by clearing logs: for eps = p/q,
///   k*eps*log(1+lambda-) >= ...  <=>  (1+lambda-)^(k p) >= ((2 lambda+)^32 (beta+)^96)^q.
inline long choose_k(const Rational& eps, const BakerBounds& b) {
  if (!(eps > 0 && eps <= 1)) throw validation_error("epsilon must be in (0,1]");
  b.validate();
  long p = 0, q = 0;
  if (!eps.get_num().fits_slong_p() || !eps.get_den().fits_slong_p())
    throw validation_error("epsilon numerator/denominator too large");
  p = eps.get_num().get_si();
  q = eps.get_den().get_si();
  Rational base = 1 + b.lambda_minus;  // >= 2
  Rational rhs = pow_rational(pow_rational(2 * b.lambda_plus, 32) * pow_rational(b.beta_plus, 96),
                              q);
  auto ok = [&](long k) { return pow_rational(base, k * p) >= rhs; };
  // start near the double estimate, then adjust exactly
  double est = (32 * std::log(2 * to_double(b.lambda_plus)) +
                96 * std::log(to_double(b.beta_plus))) /
               (to_double(eps) * std::log(1 + to_double(b.lambda_minus)));
  long k = std::max(1L, static_cast<long>(est) - 2);
  while (!ok(k)) ++k;
  while (k > 1 && ok(k - 1)) --k;
  return k;
}

/// delta = 2n log(2 lambda+) / (k (n+m)), returned as a certified rational
/// lower bound so that callers meeting it keep the sandwich valid.
inline Rational choose_delta(long n, long m, long k, const Rational& lambda_plus) {
  if (n < 1 || k < 1) throw validation_error("choose_delta needs n, k >= 1");
  Enclosure lg = log_bounds(2 * lambda_plus);
  return Rational(2 * n) * lg.lo / (Rational(k) * Rational(n + m));
}

struct LayerChoice {
  int i = 0;
  std::vector<Vertex> removed;     // V_i
  long removed_incidences = 0;     // edge endpoints inside V_i
  EmbeddedGraph G_i;               // g - V_i
  std::vector<Vertex> kept_ids;    // original ids of G_i's vertices
};

/// Picks i with |V_i| <= 2n/k minimising removed edge-endpoint incidences
/// (ties to the smallest i), and returns the (k-1)-outerplanar remainder.
/// Residues beyond the deepest level all give V_i = {}, so only
/// min(k, max_level + 2) distinct indices need materialising; the size
/// threshold still uses the true k.
inline LayerChoice choose_layer(const EmbeddedGraph& g, int k) {
  if (k < 1) throw validation_error("choose_layer needs k >= 1");
  auto lab = compute_levels(g);
  int distinct = std::min(k, lab.max_level + 2);
  std::vector<std::vector<Vertex>> sets(distinct);
  for (Vertex v = 0; v < g.n; ++v) sets[lab.level[v] % k].push_back(v);
  long n = g.n;
  std::vector<int> candidates;
  for (int i = 0; i < distinct; ++i)
    if (static_cast<long>(sets[i].size()) * k <= 2 * n) candidates.push_back(i);
  if (candidates.empty())
    throw validation_error("no admissible layer (should be impossible by counting)");
  // edge-endpoint incidences per layer
  std::vector<long> incid(distinct, 0);
  for (const auto& [u, v] : g.edges) {
    ++incid[lab.level[u] % k];
    ++incid[lab.level[v] % k];
  }
  int best = candidates.front();
  for (int i : candidates)
    if (incid[i] < incid[best]) best = i;
  LayerChoice out;
  out.i = best;
  out.removed = sets[best];
  out.removed_incidences = incid[best];
  std::vector<Vertex> keep;
  std::vector<bool> gone(g.n, false);
  for (Vertex v : out.removed) gone[v] = true;
  for (Vertex v = 0; v < g.n; ++v)
    if (!gone[v]) keep.push_back(v);
  out.G_i = g.induced(keep, &out.kept_ids);
  return out;
}

/// Certificate accompanying a log-partition estimate: the chosen layer,
/// what was removed, the decomposition width actually achieved, and the
/// exact sandwich data  Z_hat <= Z_hat(G) <= (2 lambda+)^(2n/k) (beta+)^(12n/k) Z_hat.
struct PrasCertificate {
  long n = 0, m = 0;
  long k = 0;
  Rational delta;
  int layer = 0;
  long removed_vertices = 0;
  long removed_incidences = 0;
  int width = 0;
  double log_z_hat = 0.0;
  double log_upper_factor = 0.0;  // (2n/k) log(2 lambda+) + (12n/k) log(beta+)
};

namespace detail {

inline LogWeight log_Z_components(const EmbeddedGraph& g, const SpinParams& p, int width_limit) {
  // decompose per component so min-fill stays small and bags stay local
  auto comp = g.component_ids();
  int nc = g.num_components();
  LogWeight total = LogWeight::one();
  for (int c = 0; c < nc; ++c) {
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < g.n; ++v)
      if (comp[v] == c) keep.push_back(v);
    EmbeddedGraph sub = g.induced(keep);
    TreeDecomposition td = build_min_fill(sub);
    total *= dp_Z_log(sub, td, p, {}, width_limit);
  }
  if (g.n == 0) return LogWeight::one();
  return total;
}

inline int max_min_fill_width(const EmbeddedGraph& g) {
  auto comp = g.component_ids();
  int nc = g.num_components();
  int w = -1;
  for (int c = 0; c < nc; ++c) {
    std::vector<Vertex> keep;
    for (Vertex v = 0; v < g.n; ++v)
      if (comp[v] == c) keep.push_back(v);
    EmbeddedGraph sub = g.induced(keep);
    w = std::max(w, build_min_fill(sub).width());
  }
  return w;
}

}  // namespace detail

/// The approximation scheme for log Z: remove one residue class of levels,
/// solve the bounded-treewidth remainder exactly in the log domain, and
/// certify the sandwich. Hatted parameters are clamped into the brackets.
inline std::pair<double, PrasCertificate> log_pras(const EmbeddedGraph& g, const Rational& eps,
                                                   const BakerBounds& bounds,
                                                   const SpinParams& hatted,
                                                   int width_limit = 30) {
  if (g.n < 3) throw validation_error("log_pras needs at least 3 vertices");
  bounds.validate();
  SpinParams use = bounds.clamp(hatted);
  PrasCertificate cert;
  cert.n = g.n;
  cert.m = g.num_edges();
  cert.k = choose_k(eps, bounds);
  cert.delta = choose_delta(cert.n, cert.m, cert.k, bounds.lambda_plus);
  // any k > 2n admits only empty residue classes, so clamping there keeps
  // the selection (and the certificate's |V_i| <= 2n/k claim) intact while
  // fitting an int
  long k_eff = std::min(cert.k, 2L * g.n + 1);
  LayerChoice layer = choose_layer(g, static_cast<int>(k_eff));
  cert.layer = layer.i;
  cert.removed_vertices = static_cast<long>(layer.removed.size());
  cert.removed_incidences = layer.removed_incidences;
  cert.width = detail::max_min_fill_width(layer.G_i);
  LogWeight z = detail::log_Z_components(layer.G_i, use, width_limit);
  if (z.is_zero()) throw validation_error("log_pras: Z(G_i) = 0");
  cert.log_z_hat = z.lg;
  double lk = static_cast<double>(cert.k);
  cert.log_upper_factor = (2.0 * cert.n / lk) * log_double(2 * bounds.lambda_plus) +
                          (12.0 * cert.n / lk) * log_double(bounds.beta_plus);
  return {z.lg, cert};
}

/// Test-only exact check of the sandwich
///   Z_hat <= Z <= (2 lambda+)^(2n/k) (beta+)^(12n/k) Z_hat,
/// decided by raising both sides to the k-th power (no fractional powers).
inline bool verify_bakerbound(const EmbeddedGraph& g, const SpinParams& p, int k,
                              const BakerBounds& bounds) {
  bounds.validate();
  LayerChoice layer = choose_layer(g, k);
  TreeDecomposition td_full = build_min_fill(g);
  Rational z_full = dp_Z(g, td_full, p);
  Rational z_hat = 1;
  {
    auto comp = layer.G_i.component_ids();
    int nc = layer.G_i.num_components();
    for (int c = 0; c < nc; ++c) {
      std::vector<Vertex> keep;
      for (Vertex v = 0; v < layer.G_i.n; ++v)
        if (comp[v] == c) keep.push_back(v);
      EmbeddedGraph sub = layer.G_i.induced(keep);
      z_hat *= dp_Z(sub, build_min_fill(sub), p);
    }
    if (layer.G_i.n == 0) z_hat = 1;
  }
  if (!(z_hat <= z_full)) return false;
  long n = g.n;
  Rational upper_k = pow_rational(2 * bounds.lambda_plus, 2 * n) *
                     pow_rational(bounds.beta_plus, 12 * n);
  // Z <= f * Z_hat with f = upper_k^(1/k)  <=>  Z^k <= upper_k * Z_hat^k
  return pow_rational(z_full, k) <= upper_k * pow_rational(z_hat, k);
}

/// Z >= (1 + lambda)^(n/4) for beta >= 1 > gamma >= 0, lambda >= 1 on
/// planar graphs (largest colour class of a proper 4-colouring is an
/// independent set); exact comparison via 4th powers.
inline bool colour_class_lower_bound_holds(const EmbeddedGraph& g, const SpinParams& p,
                                      const Rational& z) {
  return pow_rational(z, 4) >= pow_rational(1 + p.lambda, g.n);
}

}  // namespace twospin
