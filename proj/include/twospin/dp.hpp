#pragma once

#include <algorithm>
#include <vector>

#include "twospin/spin.hpp"
#include "twospin/tree_decomposition.hpp"
#include "twospin/weight.hpp"

namespace twospin {

/// Exact-rational factor evaluation for the DP.
struct ExactEval {
  using W = ExactWeight;
  Rational beta, gamma, lambda;

  explicit ExactEval(const SpinParams& p) : beta(p.beta), gamma(p.gamma), lambda(p.lambda) {}

  W edge_factor(int s, int t) const {
    if (s == 0 && t == 0) return {beta};
    if (s == 1 && t == 1) return {gamma};
    return W::one();
  }
  W vertex_factor(int s) const { return s == 1 ? W{lambda} : W::one(); }
};

/// Log-domain factor evaluation; parameters may be given directly as logs
/// (with zero flags) so that irrational shifted parameters are usable.
struct LogEval {
  using W = LogWeight;
  LogWeight beta, gamma, lambda;

  explicit LogEval(const SpinParams& p)
      : beta(LogWeight::from_rational(p.beta)),
        gamma(LogWeight::from_rational(p.gamma)),
        lambda(LogWeight::from_rational(p.lambda)) {}
  LogEval(LogWeight b, LogWeight g, LogWeight l) : beta(b), gamma(g), lambda(l) {}

  W edge_factor(int s, int t) const {
    if (s == 0 && t == 0) return beta;
    if (s == 1 && t == 1) return gamma;
    return W::one();
  }
  W vertex_factor(int s) const { return s == 1 ? lambda : W::one(); }
};

namespace detail {

struct DpNode {
  std::vector<Vertex> bag;          // sorted
  std::vector<int> children;
  std::vector<Edge> edges;          // edges introduced (weighted) at this node
};

/// Rooted DP plan: assigns every graph edge to the topmost bag containing
/// both endpoints so each edge factor is applied exactly once, and each
/// vertex weight is applied exactly once where the vertex leaves the bags
/// (or at the root).
struct DpPlan {
  std::vector<DpNode> nodes;
  std::vector<int> roots;
};

inline DpPlan make_plan(const EmbeddedGraph& g, const TreeDecomposition& td) {
  DpPlan plan;
  int t = td.size();
  plan.nodes.resize(t);
  std::vector<int> depth(t, -1);
  // depths via repeated parent walks (t is small at desk scale)
  for (int i = 0; i < t; ++i) {
    int d = 0, v = i;
    while (td.parent[v] != -1) {
      v = td.parent[v];
      ++d;
    }
    depth[i] = d;
  }
  for (int i = 0; i < t; ++i) {
    plan.nodes[i].bag = td.bags[i];
    if (td.parent[i] == -1)
      plan.roots.push_back(i);
    else
      plan.nodes[td.parent[i]].children.push_back(i);
  }
  for (const auto& e : g.edges) {
    int best = -1;
    for (int i = 0; i < t; ++i) {
      const auto& b = td.bags[i];
      if (std::binary_search(b.begin(), b.end(), e.first) &&
          std::binary_search(b.begin(), b.end(), e.second)) {
        if (best == -1 || depth[i] < depth[best]) best = i;
      }
    }
    if (best == -1) throw validation_error("invalid decomposition: edge not covered");
    plan.nodes[best].edges.push_back(e);
  }
  return plan;
}

template <class Eval>
std::vector<typename Eval::W> eval_node(const DpPlan& plan, int idx, const Eval& ev,
                                        const Pinning& pin) {
  using W = typename Eval::W;
  const DpNode& node = plan.nodes[idx];
  int b = static_cast<int>(node.bag.size());
  auto pos_of = [&](Vertex v) {
    return static_cast<int>(std::lower_bound(node.bag.begin(), node.bag.end(), v) -
                            node.bag.begin());
  };

  std::vector<W> table(static_cast<std::size_t>(1) << b, W::zero());
  for (std::uint32_t mask = 0; mask < table.size(); ++mask) {
    bool ok = true;
    for (int i = 0; i < b && ok; ++i) {
      auto it = pin.find(node.bag[i]);
      if (it != pin.end() && ((mask >> i) & 1u) != static_cast<unsigned>(it->second)) ok = false;
    }
    if (!ok) continue;
    W w = W::one();
    for (const auto& [u, v] : node.edges)
      w *= ev.edge_factor((mask >> pos_of(u)) & 1u, (mask >> pos_of(v)) & 1u);
    table[mask] = w;
  }

  for (int child : node.children) {
    std::vector<W> child_table = eval_node(plan, child, ev, pin);
    const auto& cbag = plan.nodes[child].bag;
    int cb = static_cast<int>(cbag.size());
    // Common vertices keep their spins; the rest of the child's bag is
    // summed out here (this is the unique exit point of those vertices,
    // by the connected-subtree property), picking up their activity.
    std::vector<int> common_pos_child, common_pos_node;
    std::vector<int> forgotten_pos;
    for (int i = 0; i < cb; ++i) {
      if (std::binary_search(node.bag.begin(), node.bag.end(), cbag[i])) {
        common_pos_child.push_back(i);
        common_pos_node.push_back(pos_of(cbag[i]));
      } else {
        forgotten_pos.push_back(i);
      }
    }
    std::vector<W> projected(static_cast<std::size_t>(1) << common_pos_child.size(), W::zero());
    for (std::uint32_t cmask = 0; cmask < child_table.size(); ++cmask) {
      if (child_table[cmask].is_zero()) continue;
      W w = child_table[cmask];
      for (int i : forgotten_pos) w *= ev.vertex_factor((cmask >> i) & 1u);
      std::uint32_t key = 0;
      for (std::size_t i = 0; i < common_pos_child.size(); ++i)
        key |= ((cmask >> common_pos_child[i]) & 1u) << i;
      projected[key] += w;
    }
    for (std::uint32_t mask = 0; mask < table.size(); ++mask) {
      if (table[mask].is_zero()) continue;
      std::uint32_t key = 0;
      for (std::size_t i = 0; i < common_pos_node.size(); ++i)
        key |= ((mask >> common_pos_node[i]) & 1u) << i;
      table[mask] *= projected[key];
    }
  }
  return table;
}

}  // namespace detail

/// Exact two-spin partition function by dynamic programming over a tree
/// decomposition, with pinned spins. Width limits keep table sizes sane:
/// 24 for the exact backend, 30 for the log backend.
template <class Eval>
typename Eval::W dp_Z_eval(const EmbeddedGraph& g, const TreeDecomposition& td, const Eval& ev,
                           const Pinning& pin, int width_limit) {
  using W = typename Eval::W;
  std::string why;
  if (!verify_decomposition(g, td, &why)) throw validation_error("invalid decomposition: " + why);
  if (td.width() > width_limit)
    throw resource_limit_error("decomposition width " + std::to_string(td.width()) +
                               " exceeds limit " + std::to_string(width_limit));
  for (const auto& [v, s] : pin) {
    if (v < 0 || v >= g.n) throw validation_error("pinned vertex out of range");
    if (s != 0 && s != 1) throw validation_error("pinned spin must be 0 or 1");
  }
  detail::DpPlan plan = detail::make_plan(g, td);
  W total = W::one();
  for (int root : plan.roots) {
    std::vector<W> table = detail::eval_node(plan, root, ev, pin);
    const auto& bag = plan.nodes[root].bag;
    W sum = W::zero();
    for (std::uint32_t mask = 0; mask < table.size(); ++mask) {
      if (table[mask].is_zero()) continue;
      W w = table[mask];
      for (std::size_t i = 0; i < bag.size(); ++i) w *= ev.vertex_factor((mask >> i) & 1u);
      sum += w;
    }
    total *= sum;
  }
  return total;
}

inline Rational dp_Z(const EmbeddedGraph& g, const TreeDecomposition& td, const SpinParams& p,
                     const Pinning& pin = {}, int width_limit = 24) {
  p.validate();
  return dp_Z_eval(g, td, ExactEval(p), pin, width_limit).value;
}

inline LogWeight dp_Z_log(const EmbeddedGraph& g, const TreeDecomposition& td,
                          const SpinParams& p, const Pinning& pin = {}, int width_limit = 30) {
  p.validate();
  return dp_Z_eval(g, td, LogEval(p), pin, width_limit);
}

/// Pr(sigma(v) = 1) under the Gibbs distribution with pinned spins.
inline Rational marginal(const EmbeddedGraph& g, const TreeDecomposition& td,
                         const SpinParams& p, const Pinning& pin, Vertex v) {
  if (v < 0 || v >= g.n) throw validation_error("marginal vertex out of range");
  Rational z = dp_Z(g, td, p, pin);
  if (z == 0) throw validation_error("marginal undefined: Z = 0 under the given pinning");
  Pinning pin1 = pin;
  pin1[v] = 1;
  return dp_Z(g, td, p, pin1) / z;
}

}  // namespace twospin
