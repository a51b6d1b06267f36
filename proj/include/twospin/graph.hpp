#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "twospin/rational.hpp"

namespace twospin {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;  // normalized u < v

inline Edge make_edge(Vertex u, Vertex v) {
  return u < v ? Edge{u, v} : Edge{v, u};
}

/// Planar graph given by a rotation system: for every vertex, the cyclic
/// clockwise order of its neighbours. The embedding is data, not something
/// this library computes; inputs either declare it or a generator builds it.
class EmbeddedGraph {
 public:
  int n = 0;
  std::vector<Edge> edges;                        // sorted, unique
  std::vector<std::vector<Vertex>> rotation;      // rotation[v]: clockwise neighbours
  std::optional<std::vector<Vertex>> outer_face;  // vertices of the unbounded face
  std::optional<std::vector<std::pair<long, long>>> coords;  // straight-line positions

  int num_edges() const { return static_cast<int>(edges.size()); }

  bool has_edge(Vertex u, Vertex v) const {
    return std::binary_search(edges.begin(), edges.end(), make_edge(u, v));
  }

  const std::vector<Vertex>& neighbors(Vertex v) const { return rotation[v]; }
  int degree(Vertex v) const { return static_cast<int>(rotation[v].size()); }

  /// Directed-edge face tracing. Successor of the dart (u -> v) is
  /// (v -> w) where w follows u in the clockwise rotation at v; every
  /// dart lies on exactly one face walk.
  std::vector<std::vector<Vertex>> trace_faces() const {
    std::map<std::pair<Vertex, Vertex>, int> dart_pos;  // (u,v) -> index of u in rotation[v]
    for (Vertex v = 0; v < n; ++v)
      for (int i = 0; i < degree(v); ++i) dart_pos[{rotation[v][i], v}] = i;

    std::set<std::pair<Vertex, Vertex>> used;
    std::vector<std::vector<Vertex>> faces;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v0 : rotation[u]) {
        if (used.count({u, v0})) continue;
        std::vector<Vertex> walk;
        Vertex a = u, b = v0;
        while (!used.count({a, b})) {
          used.insert({a, b});
          walk.push_back(a);
          auto it = dart_pos.find({a, b});
          if (it == dart_pos.end()) throw validation_error("rotation mismatch during face trace");
          int i = it->second;
          Vertex next = rotation[b][(i + 1) % degree(b)];
          a = b;
          b = next;
        }
        faces.push_back(std::move(walk));
      }
    }
    return faces;
  }

  std::vector<int> component_ids() const {
    std::vector<int> comp(n, -1);
    int c = 0;
    for (Vertex s = 0; s < n; ++s) {
      if (comp[s] != -1) continue;
      std::vector<Vertex> stack{s};
      comp[s] = c;
      while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : rotation[v])
          if (comp[w] == -1) {
            comp[w] = c;
            stack.push_back(w);
          }
      }
      ++c;
    }
    return comp;
  }

  int num_components() const {
    auto comp = component_ids();
    return comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
  }

  /// Checks all representation invariants: rotations are exactly the
  /// neighbourhoods, edges appear once per endpoint, and face tracing
  /// satisfies Euler's formula per connected component (a failure here
  /// signals non-planar embedding data).
  void validate() const {
    if (n < 0) throw validation_error("negative vertex count");
    if (static_cast<int>(rotation.size()) != n) throw validation_error("rotation size != n");
    std::set<Edge> eset(edges.begin(), edges.end());
    if (eset.size() != edges.size()) throw validation_error("duplicate edge");
    for (const auto& [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n || v >= n) throw validation_error("edge endpoint out of range");
      if (u == v) throw validation_error("self-loop");
    }
    // rotation[v] must be a permutation of v's neighbour set
    std::map<Vertex, std::set<Vertex>> nbr;
    for (const auto& [u, v] : edges) {
      nbr[u].insert(v);
      nbr[v].insert(u);
    }
    for (Vertex v = 0; v < n; ++v) {
      std::set<Vertex> rot(rotation[v].begin(), rotation[v].end());
      if (rot.size() != rotation[v].size())
        throw validation_error("rotation mismatch: repeated neighbour at vertex " + std::to_string(v));
      if (rot != nbr[v])
        throw validation_error("rotation mismatch at vertex " + std::to_string(v));
    }
    if (outer_face) {
      for (Vertex v : *outer_face)
        if (v < 0 || v >= n) throw validation_error("outer face vertex out of range");
    }
    if (coords && static_cast<int>(coords->size()) != n)
      throw validation_error("coords size != n");

    // Euler per component: n_i - m_i + f_i = 2, an edgeless component
    // counting as one face.
    auto comp = component_ids();
    int c = num_components();
    std::vector<long> nv(c, 0), me(c, 0), fa(c, 0);
    for (Vertex v = 0; v < n; ++v) ++nv[comp[v]];
    for (const auto& [u, v] : edges) ++me[comp[u]];
    for (const auto& f : trace_faces()) ++fa[comp[f.front()]];
    for (int i = 0; i < c; ++i) {
      if (me[i] == 0) fa[i] = 1;
      if (nv[i] - me[i] + fa[i] != 2)
        throw validation_error("Euler formula violation: component " + std::to_string(i) +
                               " has n=" + std::to_string(nv[i]) + " m=" + std::to_string(me[i]) +
                               " f=" + std::to_string(fa[i]));
    }
  }

  /// Deterministic outer-face fallback: the traced face of maximum length,
  /// ties broken by lexicographically smallest canonical rotation.
  static std::vector<Vertex> canonical_cycle(std::vector<Vertex> f) {
    if (f.empty()) return f;
    std::size_t best = 0;
    for (std::size_t i = 1; i < f.size(); ++i) {
      std::vector<Vertex> a(f.begin() + i, f.end());
      a.insert(a.end(), f.begin(), f.begin() + i);
      std::vector<Vertex> b(f.begin() + best, f.end());
      b.insert(b.end(), f.begin(), f.begin() + best);
      if (a < b) best = i;
    }
    std::rotate(f.begin(), f.begin() + best, f.end());
    return f;
  }

  std::vector<Vertex> default_outer_face() const {
    auto faces = trace_faces();
    if (faces.empty()) throw validation_error("no faces: graph has no edges, outer face undefined");
    std::vector<Vertex> best;
    for (auto& f : faces) {
      auto cf = canonical_cycle(f);
      if (cf.size() > best.size() || (cf.size() == best.size() && (best.empty() || cf < best)))
        best = cf;
    }
    return best;
  }

  void ensure_outer_face() {
    if (!outer_face && num_edges() > 0) outer_face = default_outer_face();
  }

  /// Induced subgraph on `keep` (ids are compacted in increasing order).
  /// Rotations and coords are restricted; the outer face is dropped since
  /// the sub-embedding generally has a different unbounded face.
  EmbeddedGraph induced(const std::vector<Vertex>& keep, std::vector<Vertex>* old_ids = nullptr) const {
    std::vector<Vertex> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::map<Vertex, Vertex> newid;
    for (std::size_t i = 0; i < sorted.size(); ++i) newid[sorted[i]] = static_cast<Vertex>(i);
    EmbeddedGraph g;
    g.n = static_cast<int>(sorted.size());
    g.rotation.resize(g.n);
    for (Vertex v : sorted) {
      for (Vertex w : rotation[v])
        if (newid.count(w)) g.rotation[newid[v]].push_back(newid[w]);
    }
    for (const auto& [u, v] : edges)
      if (newid.count(u) && newid.count(v)) g.edges.push_back(make_edge(newid[u], newid[v]));
    std::sort(g.edges.begin(), g.edges.end());
    if (coords) {
      g.coords.emplace();
      for (Vertex v : sorted) g.coords->push_back((*coords)[v]);
    }
    if (old_ids) *old_ids = sorted;
    return g;
  }
};

inline nlohmann::ordered_json graph_to_json(const EmbeddedGraph& g) {
  nlohmann::ordered_json j;
  j["n"] = g.n;
  j["edges"] = nlohmann::ordered_json::array();
  for (const auto& [u, v] : g.edges) j["edges"].push_back({u, v});
  j["rotation"] = g.rotation;
  if (g.outer_face) j["outer_face"] = *g.outer_face;
  if (g.coords) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [x, y] : *g.coords) arr.push_back({x, y});
    j["coords"] = arr;
  }
  return j;
}

inline EmbeddedGraph graph_from_json(const nlohmann::json& j) {
  EmbeddedGraph g;
  try {
    g.n = j.at("n").get<int>();
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw validation_error("edge entry must be [u,v]");
      g.edges.push_back(make_edge(e[0].get<int>(), e[1].get<int>()));
    }
    std::sort(g.edges.begin(), g.edges.end());
    g.rotation = j.at("rotation").get<std::vector<std::vector<Vertex>>>();
    if (j.contains("outer_face")) g.outer_face = j["outer_face"].get<std::vector<Vertex>>();
    if (j.contains("coords")) {
      g.coords.emplace();
      for (const auto& c : j["coords"]) g.coords->push_back({c[0].get<long>(), c[1].get<long>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("graph parse error: ") + e.what());
  }
  g.validate();
  g.ensure_outer_face();
  return g;
}

inline EmbeddedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open graph file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw validation_error(std::string("graph parse error: ") + e.what());
  }
  return graph_from_json(j);
}

}  // namespace twospin
