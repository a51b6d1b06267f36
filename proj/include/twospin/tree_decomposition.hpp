#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "twospin/graph.hpp"

namespace twospin {

struct TreeDecomposition {
  std::vector<int> parent;                 // parent[i] = -1 at the root(s)
  std::vector<std::vector<Vertex>> bags;   // bags[i]: sorted vertex list

  int width() const {
    std::size_t w = 0;
    for (const auto& b : bags) w = std::max(w, b.size());
    return static_cast<int>(w) - 1;
  }
  int size() const { return static_cast<int>(bags.size()); }
};

/// All three decomposition invariants: vertex coverage, edge coverage,
/// and connectedness of each vertex's occurrence set in the tree.
inline bool verify_decomposition(const EmbeddedGraph& g, const TreeDecomposition& td,
                                 std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (td.bags.size() != td.parent.size()) return fail("parent/bags size mismatch");
  int t = td.size();
  for (int i = 0; i < t; ++i)
    if (td.parent[i] < -1 || td.parent[i] >= t || td.parent[i] == i)
      return fail("bad parent link");
  // acyclicity
  {
    std::vector<int> depth(t, -1);
    for (int i = 0; i < t; ++i) {
      int v = i, steps = 0;
      while (v != -1 && depth[v] == -1 && steps <= t) {
        v = td.parent[v];
        ++steps;
      }
      if (steps > t) return fail("cycle in parent links");
    }
  }
  std::vector<bool> covered(g.n, false);
  for (const auto& b : td.bags)
    for (Vertex v : b) {
      if (v < 0 || v >= g.n) return fail("bag vertex out of range");
      covered[v] = true;
    }
  for (Vertex v = 0; v < g.n; ++v)
    if (!covered[v]) return fail("vertex " + std::to_string(v) + " in no bag");
  for (const auto& [u, v] : g.edges) {
    bool ok = false;
    for (const auto& b : td.bags)
      if (std::binary_search(b.begin(), b.end(), u) && std::binary_search(b.begin(), b.end(), v)) {
        ok = true;
        break;
      }
    if (!ok) return fail("edge not covered");
  }
  // connected subtree per vertex: count nodes containing v, and tree edges
  // joining two nodes that both contain v; the occurrence set is connected
  // iff nodes = edges + 1.
  std::map<Vertex, int> nodes, links;
  for (int i = 0; i < t; ++i)
    for (Vertex v : td.bags[i]) {
      nodes[v]++;
      int p = td.parent[i];
      if (p != -1 && std::binary_search(td.bags[p].begin(), td.bags[p].end(), v)) links[v]++;
    }
  for (const auto& [v, cnt] : nodes)
    if (cnt != links[v] + 1) return fail("occurrences of vertex " + std::to_string(v) + " not connected");
  return true;
}

/// Min-fill elimination heuristic. Bags follow the elimination cliques;
/// ties go to the smallest vertex id so decompositions are reproducible.
inline TreeDecomposition build_min_fill(const EmbeddedGraph& g) {
  int n = g.n;
  std::vector<std::set<Vertex>> adj(n);
  for (const auto& [u, v] : g.edges) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<bool> gone(n, false);
  std::vector<int> elim_index(n, -1);
  TreeDecomposition td;
  if (n == 0) {
    td.bags.push_back({});
    td.parent.push_back(-1);
    return td;
  }
  std::vector<Vertex> order;
  for (int step = 0; step < n; ++step) {
    long best_fill = -1;
    Vertex best = -1;
    for (Vertex v = 0; v < n; ++v) {
      if (gone[v]) continue;
      long fill = 0;
      std::vector<Vertex> nb(adj[v].begin(), adj[v].end());
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j)
          if (!adj[nb[i]].count(nb[j])) ++fill;
      if (best == -1 || fill < best_fill) {
        best_fill = fill;
        best = v;
      }
    }
    std::vector<Vertex> bag(adj[best].begin(), adj[best].end());
    bag.push_back(best);
    std::sort(bag.begin(), bag.end());
    td.bags.push_back(bag);
    elim_index[best] = step;
    order.push_back(best);
    std::vector<Vertex> nb(adj[best].begin(), adj[best].end());
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        adj[nb[i]].insert(nb[j]);
        adj[nb[j]].insert(nb[i]);
      }
    for (Vertex u : nb) adj[u].erase(best);
    adj[best].clear();
    gone[best] = true;
  }
  // Parent of bag i: the bag of the earliest-eliminated other vertex in it.
  td.parent.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    int nxt = -1;
    for (Vertex u : td.bags[i]) {
      if (u == order[i]) continue;
      if (nxt == -1 || elim_index[u] < nxt) nxt = elim_index[u];
    }
    td.parent[i] = nxt;  // -1 when the bag is a singleton component root
  }
  // Forest -> tree: hang extra roots under the last bag.
  int main_root = n - 1;
  for (int i = 0; i < n - 1; ++i)
    if (td.parent[i] == -1) td.parent[i] = main_root;
  return td;
}

/// Path decomposition of a full w x h grid by sweeping a column boundary;
/// width = min(w, h). Requires unit-grid coordinates (generated grids).
inline TreeDecomposition build_column_sweep(const EmbeddedGraph& g) {
  if (!g.coords) throw validation_error("column_sweep needs grid coordinates");
  long minx = 0, maxx = 0, miny = 0, maxy = 0;
  std::map<std::pair<long, long>, Vertex> at;
  for (Vertex v = 0; v < g.n; ++v) {
    auto c = (*g.coords)[v];
    if (v == 0) {
      minx = maxx = c.first;
      miny = maxy = c.second;
    }
    minx = std::min(minx, c.first);
    maxx = std::max(maxx, c.first);
    miny = std::min(miny, c.second);
    maxy = std::max(maxy, c.second);
    if (!at.emplace(c, v).second) throw validation_error("column_sweep: duplicate coordinates");
  }
  long w = maxx - minx + 1, h = maxy - miny + 1;
  if (w * h != g.n) throw validation_error("column_sweep: graph is not a full grid");
  for (const auto& [u, v] : g.edges) {
    auto a = (*g.coords)[u], b = (*g.coords)[v];
    long d = std::abs(a.first - b.first) + std::abs(a.second - b.second);
    if (d != 1) throw validation_error("column_sweep: non-grid edge");
  }
  if (static_cast<long>(g.num_edges()) != w * (h - 1) + h * (w - 1))
    throw validation_error("column_sweep: missing grid edges");

  // Sweep along the longer dimension so bags have min(w,h)+1 vertices.
  bool transpose = w < h;
  long W = transpose ? h : w, H = transpose ? w : h;
  auto vat = [&](long i, long j) {
    return transpose ? at.at({minx + j, miny + i}) : at.at({minx + i, miny + j});
  };
  TreeDecomposition td;
  if (W == 1) {
    std::vector<Vertex> bag;
    for (long j = 0; j < H; ++j) bag.push_back(vat(0, j));
    std::sort(bag.begin(), bag.end());
    td.bags.push_back(bag);
    td.parent.push_back(-1);
    return td;
  }
  for (long i = 0; i + 1 < W; ++i)
    for (long j = 0; j < H; ++j) {
      std::vector<Vertex> bag;
      for (long jj = j; jj < H; ++jj) bag.push_back(vat(i, jj));
      for (long jj = 0; jj <= j; ++jj) bag.push_back(vat(i + 1, jj));
      std::sort(bag.begin(), bag.end());
      td.bags.push_back(bag);
      td.parent.push_back(td.bags.size() == 1 ? -1 : static_cast<int>(td.bags.size()) - 2);
    }
  return td;
}

enum class DecompositionStrategy { min_fill, column_sweep };

inline TreeDecomposition build_tree_decomposition(const EmbeddedGraph& g,
                                                  DecompositionStrategy s) {
  TreeDecomposition td = s == DecompositionStrategy::min_fill ? build_min_fill(g)
                                                              : build_column_sweep(g);
  std::string why;
  if (!verify_decomposition(g, td, &why))
    throw validation_error("invalid decomposition produced: " + why);
  return td;
}

}  // namespace twospin
