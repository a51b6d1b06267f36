#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "twospin/graph.hpp"

namespace twospin {

namespace detail {

// Clockwise angular order around a vertex, computed exactly from integer
// direction vectors (no trigonometry, no ties for straight-line embeddings).
inline bool ccw_less(std::pair<long, long> a, std::pair<long, long> b) {
  auto half = [](std::pair<long, long> d) {
    return (d.second > 0 || (d.second == 0 && d.first > 0)) ? 0 : 1;
  };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  long cross = a.first * b.second - a.second * b.first;
  return cross > 0;
}

inline void rotations_from_coords(EmbeddedGraph& g) {
  g.rotation.assign(g.n, {});
  for (const auto& [u, v] : g.edges) {
    g.rotation[u].push_back(v);
    g.rotation[v].push_back(u);
  }
  const auto& c = *g.coords;
  for (Vertex v = 0; v < g.n; ++v) {
    std::sort(g.rotation[v].begin(), g.rotation[v].end(), [&](Vertex a, Vertex b) {
      std::pair<long, long> da{c[a].first - c[v].first, c[a].second - c[v].second};
      std::pair<long, long> db{c[b].first - c[v].first, c[b].second - c[v].second};
      return ccw_less(da, db);
    });
    std::reverse(g.rotation[v].begin(), g.rotation[v].end());  // clockwise
  }
}

inline EmbeddedGraph from_coords(int n, std::vector<Edge> edges,
                                 std::vector<std::pair<long, long>> coords,
                                 std::vector<Vertex> outer) {
  EmbeddedGraph g;
  g.n = n;
  std::sort(edges.begin(), edges.end());
  g.edges = std::move(edges);
  g.coords = std::move(coords);
  g.outer_face = std::move(outer);
  rotations_from_coords(g);
  g.validate();
  return g;
}

}  // namespace detail

/// w x h grid of vertices, vertex (i,j) -> id j*w + i, coords (i,j).
inline EmbeddedGraph generate_grid(int w, int h) {
  if (w < 1 || h < 1) throw validation_error("grid dimensions must be positive");
  std::vector<Edge> edges;
  std::vector<std::pair<long, long>> coords;
  auto id = [&](int i, int j) { return j * w + i; };
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) {
      coords.push_back({i, j});
      if (i + 1 < w) edges.push_back(make_edge(id(i, j), id(i + 1, j)));
      if (j + 1 < h) edges.push_back(make_edge(id(i, j), id(i, j + 1)));
    }
  // boundary ring, counterclockwise starting at (0,0)
  std::vector<Vertex> outer;
  if (w == 1) {
    for (int j = 0; j < h; ++j) outer.push_back(id(0, j));
  } else if (h == 1) {
    for (int i = 0; i < w; ++i) outer.push_back(id(i, 0));
  } else {
    for (int i = 0; i < w; ++i) outer.push_back(id(i, 0));
    for (int j = 1; j < h; ++j) outer.push_back(id(w - 1, j));
    for (int i = w - 2; i >= 0; --i) outer.push_back(id(i, h - 1));
    for (int j = h - 2; j >= 1; --j) outer.push_back(id(0, j));
  }
  return detail::from_coords(w * h, std::move(edges), std::move(coords), std::move(outer));
}

inline EmbeddedGraph generate_cycle(int n) {
  if (n < 3) throw validation_error("cycle needs at least 3 vertices");
  std::vector<Edge> edges;
  std::vector<std::pair<long, long>> coords;
  std::vector<Vertex> outer;
  for (int i = 0; i < n; ++i) {
    edges.push_back(make_edge(i, (i + 1) % n));
    coords.push_back({i, static_cast<long>(i) * i});  // convex position
    outer.push_back(i);
  }
  return detail::from_coords(n, std::move(edges), std::move(coords), std::move(outer));
}

/// K4 embedded with vertex 3 inside the outer triangle 0,1,2.
inline EmbeddedGraph generate_k4() {
  return detail::from_coords(
      4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}},
      {{0, 0}, {4, 0}, {2, 4}, {2, 1}}, {0, 1, 2});
}

/// Triangular prism: outer triangle 0,1,2, inner triangle 3,4,5.
inline EmbeddedGraph generate_prism() {
  return detail::from_coords(
      6,
      {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}},
      {{0, 0}, {6, 0}, {3, 6}, {2, 1}, {4, 1}, {3, 3}}, {0, 1, 2});
}

/// Cube graph: nested squares.
inline EmbeddedGraph generate_cube() {
  return detail::from_coords(
      8,
      {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {4, 5}, {5, 6}, {6, 7}, {4, 7},
       {0, 4}, {1, 5}, {2, 6}, {3, 7}},
      {{0, 0}, {6, 0}, {6, 6}, {0, 6}, {2, 2}, {4, 2}, {4, 4}, {2, 4}},
      {0, 1, 2, 3});
}

/// Octahedron (4-regular): nested triangles with spokes.
inline EmbeddedGraph generate_octahedron() {
  return detail::from_coords(
      6,
      {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5},
       {0, 3}, {1, 3}, {1, 4}, {2, 4}, {2, 5}, {0, 5}},
      {{0, 0}, {8, 0}, {4, 7}, {4, 2}, {5, 3}, {3, 3}}, {0, 1, 2});
}

/// k disjoint copies of g (the graph k*G); copy c's vertex v gets id c*n+v.
inline EmbeddedGraph disjoint_power(const EmbeddedGraph& g, int k) {
  if (k < 1) throw validation_error("disjoint_power needs k >= 1");
  EmbeddedGraph out;
  out.n = g.n * k;
  out.rotation.resize(out.n);
  long xspan = 1;
  if (g.coords) {
    for (const auto& [x, y] : *g.coords) xspan = std::max(xspan, x + 2);
    out.coords.emplace();
  }
  for (int c = 0; c < k; ++c) {
    int off = c * g.n;
    for (const auto& [u, v] : g.edges) out.edges.push_back({u + off, v + off});
    for (Vertex v = 0; v < g.n; ++v)
      for (Vertex w : g.rotation[v]) out.rotation[v + off].push_back(w + off);
    if (g.coords)
      for (const auto& [x, y] : *g.coords) out.coords->push_back({x + c * xspan, y});
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.outer_face = g.outer_face;  // copy 0 keeps its ids
  out.validate();
  return out;
}

}  // namespace twospin
