#pragma once

#include <array>
#include <future>
#include <map>
#include <vector>

#include "twospin/brute_force.hpp"
#include "twospin/enclosures.hpp"
#include "twospin/gadget.hpp"
#include "twospin/graph.hpp"
#include "twospin/spin.hpp"

namespace twospin {

struct Mat2 {
  Rational m[2][2];
  const Rational& operator()(int i, int j) const { return m[i][j]; }
};

struct Vec2 {
  Rational v[2];
  const Rational& operator()(int i) const { return v[i]; }
};

struct ReductionMatrices {
  Mat2 P;  // rows (1-p_eq, p_eq), (1-p_neq, p_neq)
  Mat2 M;  // P * (beta 1; 1 gamma) * P^t
  Vec2 W;  // P * (beta 1; 1 gamma) * (1, lambda)^t
};

/// The phase-transfer matrices of the reduction. p_eq = p_neq is allowed
/// (the identity below is algebraic in the entries); p_neq > p_eq is an
/// ordering violation.
inline ReductionMatrices build_matrices(const SpinParams& p, const Rational& p_eq,
                                        const Rational& p_neq) {
  p.validate();
  if (!(p_neq > 0 && p_eq < 1)) throw validation_error("need 0 < p_neq, p_eq < 1");
  if (p_neq > p_eq) throw validation_error("ordering violation: p_neq > p_eq");
  ReductionMatrices r;
  r.P = {{{1 - p_eq, p_eq}, {1 - p_neq, p_neq}}};
  Mat2 B = {{{p.beta, 1}, {1, p.gamma}}};
  // M = P B P^t
  Mat2 PB;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) PB.m[i][j] = r.P.m[i][0] * B.m[0][j] + r.P.m[i][1] * B.m[1][j];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      r.M.m[i][j] = PB.m[i][0] * r.P.m[j][0] + PB.m[i][1] * r.P.m[j][1];
  r.W.v[0] = PB.m[0][0] + PB.m[0][1] * p.lambda;
  r.W.v[1] = PB.m[1][0] + PB.m[1][1] * p.lambda;
  return r;
}

/// Entry bounds Delta- / Delta+ and the slack xi, derived constructively
/// from the supplied (already hatted) rationals with a delta-sized margin
/// so that re-estimates within e^{+-delta} stay inside.
struct ReductionConstants {
  Rational delta_minus;
  Rational delta_plus;
  Rational xi;
};

inline ReductionConstants derive_constants(const SpinParams& p, const Rational& p_eq,
                                           const Rational& p_neq, const Rational& delta) {
  if (!(delta >= 0 && delta < 1)) throw validation_error("delta must be in [0,1)");
  ReductionMatrices r = build_matrices(p, p_eq, p_neq);
  Rational mn = r.M.m[0][0], mx = r.M.m[0][0];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      mn = std::min(mn, r.M.m[i][j]);
      mx = std::max(mx, r.M.m[i][j]);
    }
  for (int i = 0; i < 2; ++i) {
    mn = std::min(mn, r.W.v[i]);
    mx = std::max(mx, r.W.v[i]);
  }
  if (mn <= 0) throw validation_error("matrix entries must be positive");
  ReductionConstants c;
  c.delta_minus = mn * (1 - delta);     // (1-delta) <= e^{-delta}
  c.delta_plus = mx * (1 + 2 * delta);  // (1+2delta) >= e^{delta} on [0,1)
  Rational slack = p_eq - p_neq;
  slack = std::min(slack, Rational(1 - p.gamma));
  slack = std::min(slack, p_neq);
  slack = std::min(slack, p.lambda);
  slack = std::min(slack, Rational(1 - p.beta * p.gamma));
  if (slack <= 0)
    throw validation_error("xi would be non-positive (need p_neq < p_eq, beta*gamma < 1, "
                           "gamma < 1, p_neq > 0, lambda > 0)");
  c.xi = slack * (1 - delta);
  if (c.xi <= 0) throw validation_error("xi would be non-positive");
  return c;
}

/// k2 = ceil((n^2+n) * 2 log 5 * (Delta+)^2 / xi^3), with log 5 taken from
/// a certified upper enclosure so the chosen k2 provably satisfies the
/// inequality it came from.
inline long choose_k2(long n, const Rational& delta_plus, const Rational& xi) {
  if (n < 3) throw validation_error("choose_k2 needs n >= 3");
  if (xi <= 0 || delta_plus <= 0) throw validation_error("invalid constants");
  Enclosure log5 = log_bounds(Rational(5));
  Rational target = Rational(n * n + n) * 2 * log5.hi * delta_plus * delta_plus /
                    (xi * xi * xi);
  Integer k2 = target.get_num() / target.get_den();
  if (k2 * target.get_den() < target.get_num()) k2 += 1;  // ceiling
  if (!k2.fits_slong_p()) throw resource_limit_error("k2 does not fit in a long");
  return k2.get_si();
}

/// The least integer in the closed interval
///   [ 3 k2 log(M11/M01)/log(W1/W0) + log(4.1) n / log(W1/W0),
///     ... + log(4.9) n / log(W1/W0) ],
/// all logs via certified enclosures rounded so the returned k1 provably
/// lies inside. An empty interval is reported with its endpoints.
struct K1Result {
  long k1 = 0;
  Rational interval_lo;  // certified bounds of the defining interval
  Rational interval_hi;
};

inline K1Result choose_k1(long n, long k2, const ReductionMatrices& r) {
  if (!(r.M.m[1][1] > r.M.m[0][1]) || !(r.W.v[1] > r.W.v[0]))
    throw validation_error("choose_k1 needs M11 > M01 and W1 > W0");
  K1Result res;
  for (int terms = 24; terms <= 192; terms *= 2) {
    Enclosure lm = log_bounds(r.M.m[1][1] / r.M.m[0][1], terms);
    Enclosure lw = log_bounds(r.W.v[1] / r.W.v[0], terms);
    Enclosure l41 = log_bounds(Rational(41, 10), terms);
    Enclosure l49 = log_bounds(Rational(49, 10), terms);
    // inner interval: low endpoint rounded up, high endpoint rounded down,
    // so any integer inside provably satisfies the defining inequality
    Rational lo = (Rational(3 * k2) * lm.hi + Rational(n) * l41.hi) / lw.lo;
    Rational hi = (Rational(3 * k2) * lm.lo + Rational(n) * l49.lo) / lw.hi;
    Integer k1 = lo.get_num() / lo.get_den();
    if (k1 * lo.get_den() < lo.get_num()) k1 += 1;  // ceiling
    if (k1 < 1) k1 = 1;
    res.interval_lo = lo;
    res.interval_hi = hi;
    if (Rational(k1) <= hi) {
      if (!k1.fits_slong_p()) throw resource_limit_error("k1 does not fit in a long");
      res.k1 = k1.get_si();
      return res;
    }
    // possibly just enclosure slack straddling an integer; refine and retry
  }
  throw validation_error("k1 interval is empty: [" + rational_string(res.interval_lo) + ", " +
                         rational_string(res.interval_hi) + "] (n too small)");
}

inline long reduction_k(long k1, long k2) { return std::max(k1, 3 * k2); }

/// d selection: a caller override rounded up to a multiple of 16, else the
/// heuristic default 16n (the asymptotically sufficient schedule hides an
/// unknown constant, so the knob is exposed rather than faked).
inline long choose_d(long n, std::optional<long> user_override) {
  if (user_override) {
    long d = *user_override;
    if (d < 1) throw validation_error("d must be positive");
    return ((d + 15) / 16) * 16;
  }
  return 16 * n;
}

/// A delta that satisfies every computable upper bound the reduction's
/// error analysis places on it:
///   delta < xi^3 / (8 (Delta+)^2)      (gamma_tilde smallness),
///   delta <= n^(-5/2)                  (k1 interval slack),
///   delta <= n log(4.1/4)/(2k1+6k2),
///   delta <= n log(5/4.9)/(2k1+6k2),
///   delta <= xi/2.
/// Further bounds tied to rational ladders between the true limits and
/// their approximations (rho_4-rho_3, (rho_2-rho_1)/2, log(xi'/xi)) depend
/// on quantities with no computable home and are the caller's burden.
/// The returned value is the minimum of certified lower surrogates, so it
/// provably satisfies each inequality above.
inline Rational compliant_delta(long n, long k1, long k2, const Rational& xi,
                                const Rational& delta_plus) {
  if (n < 3 || k1 < 1 || k2 < 1) throw validation_error("compliant_delta needs n>=3, k1,k2>=1");
  if (xi <= 0 || delta_plus <= 0) throw validation_error("invalid constants");
  Rational best = xi * xi * xi / (9 * delta_plus * delta_plus);  // strictly below the /8 bound
  // n^(-5/2) >= 1 / (n^2 * ceil(sqrt(n)))
  long root = 1;
  while (root * root < n) ++root;
  best = std::min(best, Rational(1, n * n * root));
  Enclosure l41 = log_bounds(Rational(41, 40));
  Enclosure l49 = log_bounds(Rational(50, 49));
  Rational denom(2 * k1 + 6 * k2);
  best = std::min(best, Rational(Rational(n) * l41.lo / denom));
  best = std::min(best, Rational(Rational(n) * l49.lo / denom));
  best = std::min(best, Rational(xi / 2));
  return best;
}

/// gamma_tilde, lambda_tilde, K of the reduction, all exact.
struct ReducedParams {
  Rational gamma_tilde;  // (M00 M11 / M01^2)^k2
  Rational lambda_tilde; // (W1/W0)^k1 (M01/M11)^(3 k2)
  Rational K;            // 2^n / (W0^(k1 n) M11^(k2 |E|))
};

inline ReducedParams reduced_params(const ReductionMatrices& r, long k1, long k2, long n,
                                    long num_edges) {
  ReducedParams out;
  out.gamma_tilde = pow_rational(r.M.m[0][0] * r.M.m[1][1] / (r.M.m[0][1] * r.M.m[0][1]), k2);
  out.lambda_tilde =
      pow_rational(r.W.v[1] / r.W.v[0], k1) * pow_rational(r.M.m[0][1] / r.M.m[1][1], 3 * k2);
  out.K = pow_rational(Rational(2), n) /
          (pow_rational(r.W.v[0], k1 * n) * pow_rational(r.M.m[1][1], k2 * num_edges));
  return out;
}

/// The reduction instance: J is one gadget C_{k,d} per vertex of the cubic
/// planar source graph; J' adds k1 bristles per vertex and a reversed
/// k2-edge matching between parity-0 terminal blocks for every source edge.
struct ReductionInstance {
  EmbeddedGraph source;
  long k1 = 0, k2 = 0, d = 0, k = 0;
  int nu = 0;
  int gadget_vertices = 0;  // 2 nu (nu+1)

  EmbeddedGraph J;
  EmbeddedGraph Jprime;
  std::vector<std::vector<Vertex>> T0;  // T0[u][j], j in [0,k)
  std::vector<std::vector<Vertex>> T1;  // T1[u][j]
  std::vector<std::vector<Vertex>> bristle;  // bristle[u][j], j in [0,k1)
  std::vector<std::array<int, 3>> half_edge_to;  // half_edge_to[u][a] = neighbour of u_a

  std::vector<Vertex> all_terminals() const {
    std::vector<Vertex> t;
    for (const auto& row : T0) t.insert(t.end(), row.begin(), row.end());
    for (const auto& row : T1) t.insert(t.end(), row.begin(), row.end());
    std::sort(t.begin(), t.end());
    return t;
  }
};

namespace detail {

// Half-edge labels at u: u_0 points at the lowest-indexed neighbour, then
// clockwise around the rotation.
inline std::array<int, 3> half_edges(const EmbeddedGraph& g, Vertex u) {
  const auto& rot = g.rotation[u];
  if (rot.size() != 3) throw validation_error("source graph is not cubic");
  int start = 0;
  for (int i = 1; i < 3; ++i)
    if (rot[i] < rot[start]) start = i;
  return {rot[start], rot[(start + 1) % 3], rot[(start + 2) % 3]};
}

}  // namespace detail

inline ReductionInstance build_instance(const EmbeddedGraph& G, long k1, long k2, long d) {
  G.validate();
  for (Vertex v = 0; v < G.n; ++v)
    if (G.degree(v) != 3) throw validation_error("source graph is not cubic");
  if (k1 < 1 || k2 < 1 || d < 1) throw validation_error("k1, k2, d must be positive");

  ReductionInstance inst;
  inst.source = G;
  inst.k1 = k1;
  inst.k2 = k2;
  inst.d = d;
  inst.k = reduction_k(k1, k2);
  if (k1 > inst.k || 3 * k2 > inst.k) throw validation_error("k bound violated");
  Gadget gad = build_gadget(static_cast<int>(inst.k), static_cast<int>(d));
  inst.nu = gad.nu;
  inst.gadget_vertices = gad.graph.n;

  const int n = G.n;
  const int Vg = gad.graph.n;
  auto gid = [&](int u, Vertex v) { return u * Vg + v; };

  // J: n disjoint copies of the gadget
  EmbeddedGraph& J = inst.J;
  J.n = n * Vg;
  J.rotation.resize(J.n);
  for (int u = 0; u < n; ++u) {
    for (const auto& [a, b] : gad.graph.edges) J.edges.push_back({gid(u, a), gid(u, b)});
    for (Vertex v = 0; v < Vg; ++v)
      for (Vertex w : gad.graph.rotation[v]) J.rotation[gid(u, v)].push_back(gid(u, w));
  }
  std::sort(J.edges.begin(), J.edges.end());
  J.validate();

  inst.T0.assign(n, {});
  inst.T1.assign(n, {});
  auto t1 = gad.parity1_terminals();
  auto t0 = gad.parity0_terminals();
  for (int u = 0; u < n; ++u) {
    for (Vertex t : t0) inst.T0[u].push_back(gid(u, t));
    for (Vertex t : t1) inst.T1[u].push_back(gid(u, t));
  }

  // J' = J + bristles + terminal matchings
  EmbeddedGraph& Jp = inst.Jprime;
  Jp = J;
  inst.bristle.assign(n, {});
  for (int u = 0; u < n; ++u)
    for (long j = 0; j < k1; ++j) {
      inst.bristle[u].push_back(Jp.n);
      Jp.rotation.push_back({});
      ++Jp.n;
    }

  std::vector<std::pair<Vertex, Vertex>> new_edges;  // (terminal, other end)
  for (int u = 0; u < n; ++u)
    for (long j = 0; j < k1; ++j) new_edges.push_back({inst.T1[u][j], inst.bristle[u][j]});

  inst.half_edge_to.assign(n, {});
  for (int u = 0; u < n; ++u) inst.half_edge_to[u] = detail::half_edges(G, u);
  auto half_index = [&](int u, int v) {
    for (int a = 0; a < 3; ++a)
      if (inst.half_edge_to[u][a] == v) return a;
    throw validation_error("half-edge lookup failed");
  };
  for (const auto& [u, v] : G.edges) {  // u < v by normalization
    int a = half_index(u, v), b = half_index(v, u);
    for (long j = 0; j < k2; ++j)
      new_edges.push_back({inst.T0[u][a * k2 + j], inst.T0[v][b * k2 + k2 - 1 - j]});
  }

  // Insert each new edge into the terminal's rotation in the outward slot:
  // between the two ring neighbours of the row-0 vertex.
  for (const auto& [t, o] : new_edges) {
    Jp.edges.push_back(make_edge(t, o));
    for (Vertex end : {t, o}) {
      Vertex other = end == t ? o : t;
      auto& rot = Jp.rotation[end];
      if (rot.empty()) {
        rot.push_back(other);  // bristle
        continue;
      }
      if (rot.size() != 3) throw validation_error("terminal already has an external edge");
      // gadget row-0 rotation is [east, west, north]; outward slot is
      // between east and west
      rot.insert(rot.begin() + 1, other);
    }
  }
  std::sort(Jp.edges.begin(), Jp.edges.end());
  Jp.validate();  // Euler check doubles as the planarity re-validation
  return inst;
}

/// F(tau) in closed form: one factor [(beta 1; 1 gamma)(1,lambda)^t]_tau(t)
/// per bristle terminal, one matrix entry per matching edge.
inline Rational eval_F(const ReductionInstance& inst, const std::map<Vertex, int>& tau,
                       const SpinParams& p) {
  p.validate();
  auto spin = [&](Vertex t) {
    auto it = tau.find(t);
    if (it == tau.end()) throw validation_error("tau does not cover all terminals");
    if (it->second != 0 && it->second != 1) throw validation_error("tau entries must be 0/1");
    return it->second;
  };
  Rational bristle0 = p.beta + p.lambda;   // row 0 of (beta 1; 1 gamma)(1,lambda)^t
  Rational bristle1 = 1 + p.gamma * p.lambda;
  Rational f = 1;
  for (int u = 0; u < inst.source.n; ++u)
    for (long j = 0; j < inst.k1; ++j)
      f *= spin(inst.T1[u][j]) ? bristle1 : bristle0;
  auto edge_entry = [&](int s, int t) -> Rational {
    if (s == 0 && t == 0) return p.beta;
    if (s == 1 && t == 1) return p.gamma;
    return Rational(1);
  };
  for (const auto& [u, v] : inst.source.edges) {
    int a = 0, b = 0;
    for (int i = 0; i < 3; ++i) {
      if (inst.half_edge_to[u][i] == v) a = i;
      if (inst.half_edge_to[v][i] == u) b = i;
    }
    for (long j = 0; j < inst.k2; ++j)
      f *= edge_entry(spin(inst.T0[u][a * inst.k2 + j]),
                      spin(inst.T0[v][b * inst.k2 + inst.k2 - 1 - j]));
  }
  return f;
}

/// E[F(sigma-hat)] under the idealised two-phase distribution:
///   2^{-n} sum over phase vectors of
///   prod_u W_{1 xor phase(u)}^{k1} prod_{(u,v)} M_{phase(u),phase(v)}^{k2}.
/// The 2^n phase-sum may be partitioned across workers; the exact rational
/// reduction makes the result independent of the partitioning.
inline Rational ideal_expectation(const EmbeddedGraph& G, const ReductionMatrices& r, long k1,
                                  long k2, int threads = 1) {
  if (G.n > 20) throw resource_limit_error("ideal_expectation limited to n <= 20");
  for (Vertex v = 0; v < G.n; ++v)
    if (G.degree(v) != 3) throw validation_error("source graph is not cubic");
  Rational w_pow[2] = {pow_rational(r.W.v[0], k1), pow_rational(r.W.v[1], k1)};
  Rational m_pow[2][2];
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m_pow[i][j] = pow_rational(r.M.m[i][j], k2);
  auto partial = [&](std::uint32_t lo, std::uint32_t hi) {
    Rational sum = 0;
    for (std::uint32_t mask = lo; mask < hi; ++mask) {
      Rational term = 1;
      for (Vertex u = 0; u < G.n; ++u) term *= w_pow[1 ^ ((mask >> u) & 1u)];
      for (const auto& [u, v] : G.edges) term *= m_pow[(mask >> u) & 1u][(mask >> v) & 1u];
      sum += term;
    }
    return sum;
  };
  std::uint32_t total = 1u << G.n;
  Rational sum = 0;
  if (threads <= 1 || total < 1024) {
    sum = partial(0, total);
  } else {
    std::uint32_t chunk = (total + threads - 1) / threads;
    std::vector<std::future<Rational>> futs;
    for (std::uint32_t lo = 0; lo < total; lo += chunk)
      futs.push_back(std::async(std::launch::async, partial, lo, std::min(lo + chunk, total)));
    for (auto& f : futs) sum += f.get();
  }
  return sum / pow_rational(Rational(2), G.n);
}

/// The central algebraic identity of the reduction:
///   K * E[F(sigma-hat)] = Z_{1, gamma_tilde, lambda_tilde}(G), exactly.
inline bool verify_identity(const EmbeddedGraph& G, const SpinParams& p, const Rational& p_eq,
                            const Rational& p_neq, long k1, long k2,
                            Rational* lhs_out = nullptr, Rational* rhs_out = nullptr,
                            int threads = 1) {
  ReductionMatrices r = build_matrices(p, p_eq, p_neq);
  ReducedParams rp = reduced_params(r, k1, k2, G.n, G.num_edges());
  Rational lhs = ideal_expectation(G, r, k1, k2, threads) * rp.K;
  Rational rhs = brute_force_Z(G, {Rational(1), rp.gamma_tilde, rp.lambda_tilde});
  if (lhs_out) *lhs_out = lhs;
  if (rhs_out) *rhs_out = rhs;
  return lhs == rhs;
}

enum class Decision { yes, no, indeterminate };

/// Decision thresholding of an approximation z of K Z(J')/Z(J):
/// yes when z >= e^{-1} lambda_hat^h, no when z <= e 2^{-n} lambda_hat^h.
/// Conservative rational bounds on e keep both claims certified.
inline Decision decide_is(long h, const Rational& z_ratio, const Rational& lambda_hat, long n) {
  if (n < 3) throw validation_error("decide_is needs n >= 3");
  if (h < 0) throw validation_error("h must be non-negative");
  if (lambda_hat <= 0 || z_ratio < 0) throw validation_error("invalid inputs");
  const Enclosure& e = e_bounds();
  Rational lh = pow_rational(lambda_hat, h);
  if (z_ratio >= lh / e.lo) return Decision::yes;              // z >= lh/e_lo >= lh/e
  Rational two_n = pow_rational(Rational(2), n);
  if (z_ratio <= e.lo * lh / two_n) return Decision::no;       // z <= e_lo 2^-n lh <= e 2^-n lh
  return Decision::indeterminate;
}

}  // namespace twospin
