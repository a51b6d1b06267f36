#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "twospin/graph.hpp"

namespace twospin {

/// Baker level labelling: outer-face vertices have level 0; level i
/// vertices lie on the boundary after deleting all levels < i.
struct LevelLabeling {
  std::vector<int> level;
  int max_level = 0;
};

namespace detail {

// Deleting the full outer layer of a plane graph merges the outer face
// with every face incident to a deleted vertex, and leaves all other
// faces untouched. Peeling therefore only needs the original face traces
// plus a growing set of "dead" (merged-away) faces: the current boundary
// is exactly the set of live vertices incident to a dead face.
inline void peel_component(const std::vector<std::vector<Vertex>>& faces,
                           const std::vector<std::vector<int>>& faces_of_vertex,
                           const std::vector<Vertex>& comp_vertices, int initial_face,
                           std::vector<int>* level) {
  std::set<Vertex> alive(comp_vertices.begin(), comp_vertices.end());
  std::vector<bool> dead_face(faces.size(), false);
  dead_face[initial_face] = true;
  int lvl = 0;
  while (!alive.empty()) {
    std::vector<Vertex> layer;
    for (Vertex v : alive)
      for (int f : faces_of_vertex[v])
        if (dead_face[f]) {
          layer.push_back(v);
          break;
        }
    if (layer.empty())
      throw validation_error("level peeling stalled: outer face does not reach component");
    for (Vertex v : layer) {
      (*level)[v] = lvl;
      alive.erase(v);
      for (int f : faces_of_vertex[v]) dead_face[f] = true;
    }
    ++lvl;
  }
}

}  // namespace detail

inline LevelLabeling compute_levels(const EmbeddedGraph& g) {
  LevelLabeling out;
  out.level.assign(g.n, 0);
  if (g.n == 0) return out;

  auto faces = g.trace_faces();
  std::vector<std::vector<int>> faces_of_vertex(g.n);
  for (std::size_t f = 0; f < faces.size(); ++f) {
    std::set<Vertex> seen;
    for (Vertex v : faces[f])
      if (seen.insert(v).second) faces_of_vertex[v].push_back(static_cast<int>(f));
  }

  auto comp = g.component_ids();
  int nc = g.num_components();
  std::vector<std::vector<Vertex>> comp_vertices(nc);
  for (Vertex v = 0; v < g.n; ++v) comp_vertices[comp[v]].push_back(v);

  // Locate the component owning the declared outer face (if any).
  int declared_comp = -1;
  std::set<Vertex> declared_set;
  if (g.outer_face && !g.outer_face->empty()) {
    declared_set.insert(g.outer_face->begin(), g.outer_face->end());
    declared_comp = comp[g.outer_face->front()];
  }

  for (int c = 0; c < nc; ++c) {
    if (comp_vertices[c].size() == 1 && g.degree(comp_vertices[c][0]) == 0) {
      out.level[comp_vertices[c][0]] = 0;  // isolated vertex: boundary by itself
      continue;
    }
    int start_face = -1;
    if (c == declared_comp) {
      // Prefer a traced face exactly matching the declared cycle; fall back
      // to vertex-set equality (orientation-insensitive).
      auto want = EmbeddedGraph::canonical_cycle(*g.outer_face);
      auto want_rev = *g.outer_face;
      std::reverse(want_rev.begin(), want_rev.end());
      want_rev = EmbeddedGraph::canonical_cycle(want_rev);
      for (std::size_t f = 0; f < faces.size(); ++f) {
        auto cf = EmbeddedGraph::canonical_cycle(faces[f]);
        if (cf == want || cf == want_rev) {
          start_face = static_cast<int>(f);
          break;
        }
      }
      if (start_face == -1) {
        for (std::size_t f = 0; f < faces.size(); ++f) {
          std::set<Vertex> fs(faces[f].begin(), faces[f].end());
          if (fs == declared_set) {
            start_face = static_cast<int>(f);
            break;
          }
        }
      }
      if (start_face == -1)
        throw validation_error("declared outer face does not match any traced face");
    } else {
      // No declaration for this component: deterministic max-length fallback.
      std::vector<Vertex> best;
      for (std::size_t f = 0; f < faces.size(); ++f) {
        if (comp[faces[f].front()] != c) continue;
        auto cf = EmbeddedGraph::canonical_cycle(faces[f]);
        if (cf.size() > best.size() || (cf.size() == best.size() && cf < best)) {
          best = cf;
          start_face = static_cast<int>(f);
        }
      }
      // Keep the first face achieving the canonical best.
      for (std::size_t f = 0; f < faces.size(); ++f) {
        if (comp[faces[f].front()] != c) continue;
        if (EmbeddedGraph::canonical_cycle(faces[f]) == best) {
          start_face = static_cast<int>(f);
          break;
        }
      }
    }
    detail::peel_component(faces, faces_of_vertex, comp_vertices[c], start_face, &out.level);
  }
  out.max_level = *std::max_element(out.level.begin(), out.level.end());
  return out;
}

/// V_i = vertices whose level is congruent to i mod k; the V_i partition V.
inline std::vector<std::vector<Vertex>> layer_sets(const EmbeddedGraph& g, int k) {
  if (k < 1) throw validation_error("layer_sets needs k >= 1");
  auto lab = compute_levels(g);
  std::vector<std::vector<Vertex>> sets(k);
  for (Vertex v = 0; v < g.n; ++v) sets[lab.level[v] % k].push_back(v);
  return sets;
}

}  // namespace twospin
