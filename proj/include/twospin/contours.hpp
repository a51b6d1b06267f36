#pragma once

#include <array>
#include <map>
#include <set>
#include <vector>

#include "twospin/gadget.hpp"

namespace twospin {

enum class ContourKind { closed_simple, boundary_simple, cross };

/// A trail in the dual lattice along duals of monochromatic edges, forced
/// to turn wherever four sigma* edges meet. Closed, or with both endpoints
/// on the outermost dual rows (cross when the endpoints sit on opposite
/// rows).
struct Contour {
  std::vector<Vertex> trail;  // dual vertex ids
  ContourKind kind = ContourKind::closed_simple;
  bool wraps = false;
  std::set<Vertex> left;   // L(g): primal vertices on the left of travel
  std::set<Vertex> right;  // R(g)

  int length() const { return static_cast<int>(trail.size()) - 1; }
};

namespace detail {

// Directions in the dual lattice: E, N, W, S.
constexpr int DX[4] = {1, 0, -1, 0};
constexpr int DY[4] = {0, 1, 0, -1};

inline int opposite(int dir) { return dir ^ 2; }

// At a degree-4 sigma* vertex the four edges are split into the fixed
// turn-pairing {W,N} + {E,S}; a trail entering through one edge of a pair
// leaves through the other. This realises the mandatory right-angle turn
// deterministically and makes extraction reproducible.
inline int pair_partner(int dir) {
  switch (dir) {
    case 0: return 3;  // E <-> S
    case 3: return 0;
    case 2: return 1;  // W <-> N
    case 1: return 2;
    default: return -1;
  }
}

struct DualEdges {
  const Gadget* g;
  DualGadget dual;
  // present[v][dir]: sigma* contains the edge leaving dual vertex v in dir
  std::vector<std::array<bool, 4>> present;
  std::vector<int> degree;

  explicit DualEdges(const Gadget& gg, const std::set<Edge>& star)
      : g(&gg), dual(gg.nu), present(dual.n(), {false, false, false, false}), degree(dual.n(), 0) {
    for (const auto& e : star) {
      auto [x1, y1] = dual.xy(e.first);
      auto [x2, y2] = dual.xy(e.second);
      int dir;
      if (y1 == y2) {
        dir = dual.wrap_x(x1 + 1) == x2 ? 0 : 2;  // from e.first's view
      } else {
        dir = y2 == y1 + 1 ? 1 : 3;
      }
      mark(e.first, dir);
      mark(e.second, opposite(dir));
    }
  }
  void mark(Vertex v, int dir) {
    if (!present[v][dir]) {
      present[v][dir] = true;
      ++degree[v];
    }
  }
  Vertex step(Vertex v, int dir) const {
    auto [x, y] = dual.xy(v);
    return dual.id(x + DX[dir], y + DY[dir]);
  }
};

// Leaving direction when the trail enters dual vertex v heading `heading`
// (so the traversed edge occupies slot opposite(heading) at v). Returns -1
// when the trail must stop (odd-degree boundary vertex).
inline int next_direction(const DualEdges& de, Vertex v, int heading, bool used[/*4*/]) {
  int in_slot = opposite(heading);
  int deg = de.degree[v];
  if (deg == 2) {
    for (int dir = 0; dir < 4; ++dir)
      if (dir != in_slot && de.present[v][dir] && !used[dir]) return dir;
    return -1;
  }
  if (deg == 4) {
    int partner = pair_partner(in_slot);
    if (de.present[v][partner] && !used[partner]) return partner;
    return -1;
  }
  return -1;  // degree 1 (boundary) or 3 (cannot happen for sigma*)
}

}  // namespace detail

/// Decomposes sigma* into contours. Every sigma* edge lands on exactly one
/// contour; open trails start and end on the outermost dual rows; the turn
/// rule holds at all degree-4 vertices including closed-trail junctions.
///
/// Start vertices are scanned in increasing dual id; odd-degree (boundary)
/// vertices are exhausted before the remaining closed loops are traced.
inline std::vector<Contour> extract_contours(const Gadget& g, const Configuration& sigma) {
  std::set<Edge> star = sigma_star(g, sigma);
  detail::DualEdges de(g, star);
  const int n = de.dual.n();

  // used[v][dir]: edge leaving v in dir already traversed
  std::vector<std::array<bool, 4>> used(n, {false, false, false, false});
  auto traverse = [&](Vertex v, int dir) -> Vertex {
    Vertex w = de.step(v, dir);
    used[v][dir] = true;
    used[w][detail::opposite(dir)] = true;
    return w;
  };

  std::vector<Contour> out;
  auto trace_from = [&](Vertex start, int dir0) {
    Contour c;
    c.trail.push_back(start);
    long unrolled = 0, min_x = 0, max_x = 0;
    Vertex v = start;
    int dir = dir0;
    while (true) {
      v = traverse(v, dir);
      unrolled += detail::DX[dir];
      min_x = std::min(min_x, unrolled);
      max_x = std::max(max_x, unrolled);
      c.trail.push_back(v);
      int nd = detail::next_direction(de, v, dir, used[v].data());
      if (nd == -1) break;
      dir = nd;
    }
    c.wraps = max_x - min_x >= de.dual.columns();
    auto [x1, y1] = de.dual.xy(c.trail.front());
    auto [x2, y2] = de.dual.xy(c.trail.back());
    if (c.trail.front() == c.trail.back() && c.trail.size() > 1) {
      c.kind = ContourKind::closed_simple;
    } else if ((y1 == -1 || y1 == g.nu) && (y2 == -1 || y2 == g.nu)) {
      c.kind = y1 != y2 ? ContourKind::cross : ContourKind::boundary_simple;
    } else {
      throw validation_error("contour trace ended off the boundary (inconsistent sigma*)");
    }
    out.push_back(std::move(c));
  };

  // open trails from odd-degree (boundary) vertices first
  for (Vertex v = 0; v < n; ++v) {
    if (de.degree[v] % 2 == 0) continue;
    for (int dir = 0; dir < 4; ++dir)
      if (de.present[v][dir] && !used[v][dir]) trace_from(v, dir);
  }
  // remaining edges form even-degree loops
  for (Vertex v = 0; v < n; ++v)
    for (int dir = 0; dir < 4; ++dir)
      if (de.present[v][dir] && !used[v][dir]) trace_from(v, dir);

  // left/right primal vertices per directed step
  for (Contour& c : out) {
    for (std::size_t i = 0; i + 1 < c.trail.size(); ++i) {
      auto [x, y] = de.dual.xy(c.trail[i]);
      auto [x2, y2] = de.dual.xy(c.trail[i + 1]);
      if (y2 == y) {
        bool east = de.dual.wrap_x(x + 1) == x2;
        int xe = east ? x2 : x;  // east endpoint column of the dual edge
        // horizontal dual edge at row y crosses primal ((xe,y),(xe,y+1))
        Vertex lo = g.id(xe, y), hi = g.id(xe, y + 1);
        if (east) {
          c.left.insert(hi);
          c.right.insert(lo);
        } else {
          c.left.insert(lo);
          c.right.insert(hi);
        }
      } else {
        bool north = y2 == y + 1;
        int ye = north ? y2 : y;  // upper row of the dual edge
        // vertical dual edge at column x crosses primal ((x,ye),(x+1,ye))
        Vertex west = g.id(x, ye), east_v = g.id(x + 1, ye);
        if (north) {
          c.left.insert(west);
          c.right.insert(east_v);
        } else {
          c.left.insert(east_v);
          c.right.insert(west);
        }
      }
    }
  }
  return out;
}

/// L(g), R(g) of a contour of sigma; their parities are pure and
/// complementary (the key contour-boundary property, covered by tests).
inline std::pair<std::set<Vertex>, std::set<Vertex>> contour_sides(const Contour& c) {
  return {c.left, c.right};
}

/// Serialization: dual coordinates doubled, so (x+1/2, y+1/2) prints as
/// the integer pair (2x+1, 2y+1).
inline std::vector<std::pair<int, int>> doubled_trail(const Gadget& g, const Contour& c) {
  DualGadget dual(g.nu);
  std::vector<std::pair<int, int>> out;
  for (Vertex v : c.trail) {
    auto [x, y] = dual.xy(v);
    out.push_back({2 * x + 1, 2 * y + 1});
  }
  return out;
}

}  // namespace twospin
