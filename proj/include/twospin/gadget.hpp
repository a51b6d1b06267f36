#pragma once

#include <array>
#include <set>
#include <vector>

#include "twospin/graph.hpp"
#include "twospin/rational.hpp"
#include "twospin/spin.hpp"

namespace twospin {

/// The wrapped lattice C_nu: vertex set Z/2nu x {0..nu}, ring edges along
/// each row and vertical edges along each column, embedded as an annulus
/// with row 0 on the unbounded face. C_{k,d} is C_nu with nu = 2dk and 2k
/// designated terminals on row 0.
class Gadget {
 public:
  int nu = 0;
  int k = 0, d = 0;  // 0,0 when the gadget has no (k,d) structure
  EmbeddedGraph graph;

  int columns() const { return 2 * nu; }
  int rows() const { return nu + 1; }
  int wrap_x(int x) const {
    int w = columns();
    return ((x % w) + w) % w;
  }
  Vertex id(int x, int y) const { return y * columns() + wrap_x(x); }
  std::pair<int, int> xy(Vertex v) const { return {v % columns(), v / columns()}; }
  int parity(int x, int y) const { return (wrap_x(x) + y) & 1; }
  int parity(Vertex v) const {
    auto [x, y] = xy(v);
    return parity(x, y);
  }

  bool is_side_vertex(Vertex v) const {
    int y = v / columns();
    return y == 0 || y == nu;
  }
  bool is_side_edge(const Edge& e) const { return is_side_vertex(e.first) && is_side_vertex(e.second); }

  /// Chebyshev distance with the x coordinate wrapped mod 2nu.
  int star_distance(Vertex a, Vertex b) const {
    auto [x1, y1] = xy(a);
    auto [x2, y2] = xy(b);
    int dx = std::abs(x1 - x2);
    dx = std::min(dx, columns() - dx);
    return std::max(dx, std::abs(y1 - y2));
  }

  std::vector<Vertex> star_neighbors(Vertex v) const {
    auto [x, y] = xy(v);
    std::vector<Vertex> out;
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) {
        if (dx == 0 && dy == 0) continue;
        int yy = y + dy;
        if (yy < 0 || yy > nu) continue;
        out.push_back(id(x + dx, yy));
      }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  std::vector<Vertex> parity1_terminals() const {
    require_kd();
    std::vector<Vertex> t;
    for (int j = 0; j < k; ++j) t.push_back(id(4 * j * d + 1, 0));
    return t;
  }
  std::vector<Vertex> parity0_terminals() const {
    require_kd();
    std::vector<Vertex> t;
    for (int j = 0; j < k; ++j) t.push_back(id(4 * j * d + 2 * d, 0));
    return t;
  }
  /// All 2k terminals in increasing x order.
  std::vector<Vertex> terminals() const {
    auto t1 = parity1_terminals(), t0 = parity0_terminals();
    std::vector<Vertex> all(t1.begin(), t1.end());
    all.insert(all.end(), t0.begin(), t0.end());
    std::sort(all.begin(), all.end());
    return all;
  }

  void require_kd() const {
    if (k < 1 || d < 1) throw validation_error("gadget has no (k,d) structure");
  }
};

inline Gadget build_gadget_nu(int nu) {
  if (nu < 1) throw validation_error("gadget needs nu >= 1");
  Gadget g;
  g.nu = nu;
  EmbeddedGraph& e = g.graph;
  e.n = 2 * nu * (nu + 1);
  for (int y = 0; y <= nu; ++y)
    for (int x = 0; x < 2 * nu; ++x) {
      e.edges.push_back(make_edge(g.id(x, y), g.id(x + 1, y)));
      if (y < nu) e.edges.push_back(make_edge(g.id(x, y), g.id(x, y + 1)));
    }
  std::sort(e.edges.begin(), e.edges.end());
  e.edges.erase(std::unique(e.edges.begin(), e.edges.end()), e.edges.end());
  e.rotation.assign(e.n, {});
  for (int y = 0; y <= nu; ++y)
    for (int x = 0; x < 2 * nu; ++x) {
      std::vector<Vertex> rot;
      rot.push_back(g.id(x + 1, y));
      if (y > 0) rot.push_back(g.id(x, y - 1));
      rot.push_back(g.id(x - 1, y));
      if (y < nu) rot.push_back(g.id(x, y + 1));
      // nu = 1 degenerates to two columns; drop the duplicate ring neighbour
      std::vector<Vertex> dedup;
      for (Vertex w : rot)
        if (std::find(dedup.begin(), dedup.end(), w) == dedup.end()) dedup.push_back(w);
      e.rotation[g.id(x, y)] = dedup;
    }
  if (nu == 1) {
    e.outer_face = std::vector<Vertex>{g.id(0, 0), g.id(1, 0), g.id(1, 1), g.id(0, 1)};
  } else {
    std::vector<Vertex> outer;
    for (int x = 0; x < 2 * nu; ++x) outer.push_back(g.id(x, 0));
    e.outer_face = outer;
  }
  e.validate();
  return g;
}

inline Gadget build_gadget(int k, int d) {
  if (k < 1 || d < 1) throw validation_error("gadget needs k, d >= 1");
  Gadget g = build_gadget_nu(2 * d * k);
  g.k = k;
  g.d = d;
  return g;
}

/// Goalpost B_{x,m}: the rectangular path at l_infinity-distance m around
/// terminal (x,0); at m = nu it closes into the keyhole.
inline std::set<Vertex> goalpost(const Gadget& g, int x, int m) {
  if (m < 0 || m > g.nu) throw validation_error("goalpost needs 0 <= m <= nu");
  std::set<Vertex> b;
  for (int j = 0; j <= m; ++j) {
    b.insert(g.id(x - m, j));
    b.insert(g.id(x - j, m));
    b.insert(g.id(x + j, m));
    b.insert(g.id(x + m, j));
  }
  return b;
}

/// Ball U_{x,h}: vertices at *-distance at most h from (x,0).
inline std::set<Vertex> ball(const Gadget& g, int x, int h) {
  std::set<Vertex> u;
  Vertex c = g.id(x, 0);
  for (Vertex v = 0; v < g.graph.n; ++v)
    if (g.star_distance(c, v) <= h) u.insert(v);
  return u;
}

enum class ParityClass { parity0, parity1, mixed };

/// Whether sigma restricted to S has parity-0 ones, parity-1 ones, or
/// neither: the spin-1 vertices of S must be exactly its parity-s subset.
inline ParityClass parity_ones(const Gadget& g, const Configuration& sigma,
                               const std::set<Vertex>& S) {
  if (S.empty()) throw validation_error("parity_ones needs a nonempty set");
  bool p0 = true, p1 = true;
  for (Vertex v : S) {
    int want0 = g.parity(v) == 0 ? 1 : 0;
    if (sigma[v] != want0) p0 = false;
    if (sigma[v] != 1 - want0) p1 = false;
  }
  if (p0) return ParityClass::parity0;
  if (p1) return ParityClass::parity1;
  return ParityClass::mixed;
}

/// Pins every vertex of S to the parity-s-ones pattern.
inline Pinning pin_parity_ones(const Gadget& g, const std::set<Vertex>& S, int s) {
  Pinning pin;
  for (Vertex v : S) pin[v] = g.parity(v) == s ? 1 : 0;
  return pin;
}

/// The alternating configuration sigma(x,y) = (x + y + 1 - s) mod 2, i.e.
/// ones exactly at parity-s vertices.
inline Configuration alternating_config(const Gadget& g, int s) {
  Configuration sigma(g.graph.n, 0);
  for (Vertex v = 0; v < g.graph.n; ++v) sigma[v] = g.parity(v) == s ? 1 : 0;
  return sigma;
}

/// ConfigStats including the side-edge counts b', c'.
inline ConfigStats gadget_stats(const Gadget& g, const Configuration& sigma) {
  ConfigStats s = config_stats(g.graph, sigma);
  for (const auto& e : g.graph.edges) {
    if (!g.is_side_edge(e)) continue;
    if (sigma[e.first] == 0 && sigma[e.second] == 0) ++s.b_side;
    if (sigma[e.first] == 1 && sigma[e.second] == 1) ++s.c_side;
  }
  return s;
}

/// Side-count identity of the wrapped lattice:
///   ell = (c - b)/4 + (c' - b')/8 + nu(nu+1),
/// checked as 8*ell == 2(c-b) + (c'-b') + 8 nu(nu+1) in exact integers.
inline bool ell_identity_check(const Gadget& g, const Configuration& sigma) {
  if (g.nu <= 2) throw validation_error("ell identity needs nu > 2");
  ConfigStats s = gadget_stats(g, sigma);
  long lhs = 8 * s.ell;
  long rhs = 2 * (s.c - s.b) + (s.c_side - s.b_side) + 8L * g.nu * (g.nu + 1);
  return lhs == rhs;
}

/// Exact Z on the cylinder by conditioning on column 0 and sweeping a
/// column frontier around the ring; the frontier is updated one vertex at
/// a time so each step costs 2^(nu+1) state transitions.
inline Rational cylinder_Z(const Gadget& g, const SpinParams& p, const Pinning& pin = {}) {
  p.validate();
  if (g.nu > 12) throw resource_limit_error("cylinder backend limited to nu <= 12");
  if (g.nu < 2) throw validation_error("cylinder backend needs nu >= 2 (ring edges degenerate)");
  const int H = g.rows(), W = g.columns();
  const std::uint32_t states = 1u << H;

  // pin masks per column
  std::vector<std::uint32_t> known(W, 0), value(W, 0);
  for (const auto& [v, s] : pin) {
    if (v < 0 || v >= g.graph.n) throw validation_error("pinned vertex out of range");
    auto [x, y] = g.xy(v);
    known[x] |= 1u << y;
    if (s) value[x] |= 1u << y;
  }

  const Rational& beta = p.beta;
  const Rational& gamma = p.gamma;
  const Rational& lambda = p.lambda;
  auto edge_f = [&](int s, int t) -> Rational {
    if (s == 0 && t == 0) return beta;
    if (s == 1 && t == 1) return gamma;
    return Rational(1);
  };

  Rational total = 0;
  for (std::uint32_t s0 = 0; s0 < states; ++s0) {
    if ((s0 & known[0]) != (value[0] & known[0])) continue;
    Rational w0 = 1;
    for (int y = 0; y < H; ++y) {
      if ((s0 >> y) & 1u) w0 *= lambda;
      if (y > 0) w0 *= edge_f((s0 >> (y - 1)) & 1u, (s0 >> y) & 1u);
    }
    if (w0 == 0) continue;
    std::vector<Rational> vec(states, Rational(0));
    vec[s0] = w0;
    for (int x = 1; x < W; ++x) {
      for (int y = 0; y < H; ++y) {
        std::vector<Rational> nxt(states, Rational(0));
        for (std::uint32_t st = 0; st < states; ++st) {
          if (vec[st] == 0) continue;
          int old_bit = (st >> y) & 1;  // column x-1, row y
          for (int b = 0; b <= 1; ++b) {
            if ((known[x] >> y) & 1u) {
              if (b != static_cast<int>((value[x] >> y) & 1u)) continue;
            }
            Rational f = b ? lambda : Rational(1);
            f *= edge_f(old_bit, b);
            if (y > 0) f *= edge_f((st >> (y - 1)) & 1u, b);
            if (f == 0) continue;
            std::uint32_t ns = (st & ~(1u << y)) | (static_cast<std::uint32_t>(b) << y);
            nxt[ns] += vec[st] * f;
          }
        }
        vec.swap(nxt);
      }
    }
    // wrap edges between column W-1 and column 0
    for (std::uint32_t st = 0; st < states; ++st) {
      if (vec[st] == 0) continue;
      Rational f = 1;
      for (int y = 0; y < H; ++y) f *= edge_f((st >> y) & 1u, (s0 >> y) & 1u);
      total += vec[st] * f;
    }
  }
  return total;
}

/// Pr(sigma(v) = 1) on the gadget via the cylinder backend.
inline Rational cylinder_marginal(const Gadget& g, const SpinParams& p, const Pinning& pin,
                                  Vertex v) {
  Rational z = cylinder_Z(g, p, pin);
  if (z == 0) throw validation_error("marginal undefined: Z = 0 under the given pinning");
  Pinning pin1 = pin;
  pin1[v] = 1;
  return cylinder_Z(g, p, pin1) / z;
}

/// Dual lattice: vertex (x,y) stands for the point (x+1/2, y+1/2), with
/// x in Z/2nu and y in {-1..nu}. Horizontal dual edges are absent on the
/// two outermost rows.
class DualGadget {
 public:
  int nu = 0;

  explicit DualGadget(int nu_) : nu(nu_) {
    if (nu < 2) throw validation_error("dual gadget needs nu >= 2");
  }

  int columns() const { return 2 * nu; }
  int rows() const { return nu + 2; }  // y = -1 .. nu
  int n() const { return columns() * rows(); }
  int wrap_x(int x) const {
    int w = columns();
    return ((x % w) + w) % w;
  }
  Vertex id(int x, int y) const { return (y + 1) * columns() + wrap_x(x); }
  std::pair<int, int> xy(Vertex v) const { return {v % columns(), v / columns() - 1}; }

  bool valid_y(int y) const { return y >= -1 && y <= nu; }

  /// Dual of a primal edge. Ring edge ((x,y),(x+1,y)) <-> vertical dual
  /// ((x,y-1),(x,y)); column edge ((x,y),(x,y+1)) <-> horizontal dual
  /// ((x-1,y),(x,y)).
  Edge dual_of(const Gadget& g, const Edge& e) const {
    auto [x1, y1] = g.xy(e.first);
    auto [x2, y2] = g.xy(e.second);
    if (y1 == y2) {
      // ring edge; identify its west endpoint x with x+1 = other (mod wrap)
      int x = (g.wrap_x(x1 + 1) == x2) ? x1 : x2;
      return make_edge(id(x, y1 - 1), id(x, y1));
    }
    int y = std::min(y1, y2);
    return make_edge(id(x1 - 1, y), id(x1, y));
  }

  /// Inverse map: primal edge of a dual edge.
  Edge primal_of(const Gadget& g, const Edge& de) const {
    auto [x1, y1] = xy(de.first);
    auto [x2, y2] = xy(de.second);
    if (x1 == x2) {
      int y = std::max(y1, y2);
      return make_edge(g.id(x1, y), g.id(x1 + 1, y));
    }
    // horizontal dual edge at row y: between (x-1,y) and (x,y) with x the
    // east endpoint
    int y = y1;
    int x = (wrap_x(x1 + 1) == x2) ? x2 : x1;
    return make_edge(g.id(x, y), g.id(x, y + 1));
  }
};

/// sigma*: duals of monochromatic edges.
inline std::set<Edge> sigma_star(const Gadget& g, const Configuration& sigma) {
  if (static_cast<int>(sigma.size()) != g.graph.n)
    throw validation_error("configuration does not cover all vertices");
  DualGadget dual(g.nu);
  std::set<Edge> out;
  for (const auto& e : g.graph.edges)
    if (sigma[e.first] == sigma[e.second]) out.insert(dual.dual_of(g, e));
  return out;
}

}  // namespace twospin
