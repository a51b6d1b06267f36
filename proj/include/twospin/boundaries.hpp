#pragma once

#include <optional>
#include <set>
#include <vector>

#include "twospin/gadget.hpp"

namespace twospin {

/// An h-boundary of terminal (x,0): a connected vertex set inside the
/// annulus U_{x,h/2} \ U_{x,h/4} separating (x,0) from (x,nu).
struct HBoundary {
  std::set<Vertex> B;
  int x = 0;  // terminal column
  int h = 0;
};

namespace detail {

inline std::set<Vertex> reachable_avoiding(const Gadget& g, Vertex from,
                                           const std::set<Vertex>& blocked) {
  std::set<Vertex> seen;
  if (blocked.count(from)) return seen;
  std::vector<Vertex> stack{from};
  seen.insert(from);
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : g.graph.rotation[v])
      if (!seen.count(w) && !blocked.count(w)) {
        seen.insert(w);
        stack.push_back(w);
      }
  }
  return seen;
}

inline bool separates(const Gadget& g, const std::set<Vertex>& B, int x) {
  Vertex a = g.id(x, 0), b = g.id(x, g.nu);
  if (B.count(a) || B.count(b)) return true;  // endpoint deleted
  return !reachable_avoiding(g, a, B).count(b);
}

inline bool connected_set(const Gadget& g, const std::set<Vertex>& B) {
  if (B.empty()) return false;
  std::set<Vertex> seen;
  std::vector<Vertex> stack{*B.begin()};
  seen.insert(*B.begin());
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : g.graph.rotation[v])
      if (B.count(w) && !seen.count(w)) {
        seen.insert(w);
        stack.push_back(w);
      }
  }
  return seen.size() == B.size();
}

}  // namespace detail

/// All four clauses of the h-boundary definition; the h/4 and h/2 cuts are
/// exact rational comparisons (4*dist > h, 2*dist <= h), no rounding.
inline bool is_h_boundary(const Gadget& g, const std::set<Vertex>& B, int x, int h) {
  if (B.empty()) return false;
  Vertex center = g.id(x, 0);
  for (Vertex v : B) {
    int dist = g.star_distance(center, v);
    if (4 * dist <= h) return false;  // clause (ii): B misses U_{x,h/4}
    if (2 * dist > h) return false;   // clause (iii): B inside U_{x,h/2}
  }
  if (!detail::separates(g, B, x)) return false;  // clause (i)
  return detail::connected_set(g, B);             // clause (iv)
}

enum class Nesting { B_inside_Bprime, Bprime_inside_B, neither };

/// "A is inside of C" means every path from C to (x,0) passes through A.
inline bool inside_of(const Gadget& g, const std::set<Vertex>& A, const std::set<Vertex>& C,
                      int x) {
  auto reach = detail::reachable_avoiding(g, g.id(x, 0), A);
  for (Vertex v : C)
    if (reach.count(v)) return false;
  return true;
}

inline Nesting nesting(const Gadget& g, const std::set<Vertex>& B, const std::set<Vertex>& Bp,
                       int x) {
  bool b_in = inside_of(g, B, Bp, x);
  bool bp_in = inside_of(g, Bp, B, x);
  if (b_in && !bp_in) return Nesting::B_inside_Bprime;
  if (bp_in && !b_in) return Nesting::Bprime_inside_B;
  return Nesting::neither;
}

enum class Phase { phase0, phase1, none };

namespace detail {

// Connected components of the parity-t-consistent vertices in the annulus
// U_{x,d/2} \ U_{x,d/4} that separate (x,0) from (x,nu). Each such
// component is itself a d-boundary, and every consistent d-boundary is a
// subset of one of them; disjoint separators on the annulus nest, so the
// quantifiers of the phase definition reduce to the outermost components.
inline std::vector<std::set<Vertex>> separating_components(const Gadget& g,
                                                           const Configuration& sigma, int x,
                                                           int d, int t) {
  Vertex center = g.id(x, 0);
  std::set<Vertex> region;
  for (Vertex v = 0; v < g.graph.n; ++v) {
    int dist = g.star_distance(center, v);
    if (4 * dist <= d || 2 * dist > d) continue;
    int want = g.parity(v) == t ? 1 : 0;
    if (sigma[v] == want) region.insert(v);
  }
  std::vector<std::set<Vertex>> comps;
  std::set<Vertex> left = region;
  while (!left.empty()) {
    Vertex s = *left.begin();
    std::set<Vertex> comp{s};
    std::vector<Vertex> stack{s};
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.graph.rotation[v])
        if (region.count(w) && !comp.count(w)) {
          comp.insert(w);
          stack.push_back(w);
        }
    }
    for (Vertex v : comp) left.erase(v);
    if (separates(g, comp, x)) comps.push_back(std::move(comp));
  }
  return comps;
}

inline std::optional<std::set<Vertex>> outermost_component(
    const Gadget& g, const std::vector<std::set<Vertex>>& comps, int x) {
  for (const auto& K : comps) {
    bool outer = true;
    for (const auto& Kp : comps) {
      if (&K == &Kp) continue;
      if (!inside_of(g, Kp, K, x)) {  // Kp must be inside K
        outer = false;
        break;
      }
    }
    if (outer) return K;
  }
  return std::nullopt;
}

// Phase check at one terminal: an s-consistent d-boundary exists and every
// opposite-parity d-boundary is inside it.
inline bool terminal_has_phase(const Gadget& g, const Configuration& sigma, int x, int d, int s) {
  auto own = separating_components(g, sigma, x, d, s);
  if (own.empty()) return false;
  auto opp = separating_components(g, sigma, x, d, 1 - s);
  if (opp.empty()) return true;
  auto o_own = outermost_component(g, own, x);
  auto o_opp = outermost_component(g, opp, x);
  if (!o_own || !o_opp) return false;
  return inside_of(g, *o_opp, *o_own, x);
}

}  // namespace detail

/// Phase of a configuration with an explicit boundary scale d (the core
/// checker; exact for any d >= 1 since the annulus cuts are rational).
inline Phase classify_phase_at(const Gadget& g, const Configuration& sigma, int d) {
  if (static_cast<int>(sigma.size()) != g.graph.n)
    throw validation_error("configuration does not cover all vertices");
  if (d < 1) throw validation_error("classify_phase needs d >= 1");
  auto terms = g.terminals();
  for (int s = 0; s <= 1; ++s) {
    bool all = true;
    for (Vertex t : terms) {
      auto [x, y] = g.xy(t);
      if (!detail::terminal_has_phase(g, sigma, x, d, s)) {
        all = false;
        break;
      }
    }
    if (all) return s == 0 ? Phase::phase0 : Phase::phase1;
  }
  return Phase::none;
}

/// Phase per the gadget's own (k,d) structure; d must be divisible by 4.
inline Phase classify_phase(const Gadget& g, const Configuration& sigma) {
  g.require_kd();
  if (g.d % 4 != 0) throw validation_error("classify_phase needs d divisible by 4");
  return classify_phase_at(g, sigma, g.d);
}

/// Canonical boundary B_x(sigma): union of consistent d-boundaries ->
/// outermost nested component -> its exterior-adjacent shell (by *-paths
/// from (x,nu)). Canonicity: re-randomising strictly inside leaves B_x
/// unchanged.
inline HBoundary canonical_boundary(const Gadget& g, const Configuration& sigma, int x) {
  g.require_kd();
  int d = g.d;
  Phase ph = classify_phase_at(g, sigma, d);
  if (ph == Phase::none) throw validation_error("configuration has no phase");
  int s = ph == Phase::phase0 ? 0 : 1;
  auto comps = detail::separating_components(g, sigma, x, d, s);
  if (comps.empty()) throw validation_error("terminal has no consistent boundary");
  auto outer = detail::outermost_component(g, comps, x);
  if (!outer) throw validation_error("consistent boundaries do not nest");

  // Exterior by *-reachability from (x,nu) avoiding the outermost component.
  std::set<Vertex> ext;
  Vertex top = g.id(x, g.nu);
  if (!outer->count(top)) {
    std::vector<Vertex> stack{top};
    ext.insert(top);
    while (!stack.empty()) {
      Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.star_neighbors(v))
        if (!ext.count(w) && !outer->count(w)) {
          ext.insert(w);
          stack.push_back(w);
        }
    }
  }
  HBoundary hb;
  hb.x = x;
  hb.h = d;
  for (Vertex v : *outer) {
    for (Vertex w : g.star_neighbors(v))
      if (ext.count(w)) {
        hb.B.insert(v);
        break;
      }
  }
  if (!is_h_boundary(g, hb.B, x, d))
    throw validation_error("canonical boundary construction failed validation");
  return hb;
}

}  // namespace twospin
