#pragma once

#include <cstdint>
#include <vector>

#include "twospin/spin.hpp"

namespace twospin {

/// Exact partition function by exhaustive enumeration. Configurations are
/// walked in Gray-code order with incremental (b, c, ell) updates; weights
/// are accumulated as integer counts per (b, c, ell) triple and converted
/// to rationals once at the end, so the inner loop stays integer-only.
inline Rational brute_force_Z(const EmbeddedGraph& g, const SpinParams& p,
                              const Pinning& pin = {}) {
  p.validate();
  for (const auto& [v, s] : pin) {
    if (v < 0 || v >= g.n) throw validation_error("pinned vertex out of range");
    if (s != 0 && s != 1) throw validation_error("pinned spin must be 0 or 1");
  }
  std::vector<Vertex> free_v;
  for (Vertex v = 0; v < g.n; ++v)
    if (!pin.count(v)) free_v.push_back(v);
  int f = static_cast<int>(free_v.size());
  if (f > 30) throw resource_limit_error("brute force limited to 30 free vertices, got " +
                                         std::to_string(f));

  long m = g.num_edges();
  Configuration sigma(g.n, 0);
  for (const auto& [v, s] : pin) sigma[v] = s;
  ConfigStats st = config_stats(g, sigma);

  long dim_c = m + 1, dim_l = g.n + 1;
  std::vector<std::uint64_t> counts(static_cast<std::size_t>((m + 1) * dim_c * dim_l), 0);
  auto slot = [&](long b, long c, long l) -> std::uint64_t& {
    return counts[static_cast<std::size_t>((b * dim_c + c) * dim_l + l)];
  };

  slot(st.b, st.c, st.ell)++;
  if (f > 0) {
    std::uint64_t total = 1ull << f;
    for (std::uint64_t i = 1; i < total; ++i) {
      int bit = __builtin_ctzll(i);
      Vertex v = free_v[bit];
      int old = sigma[v];
      sigma[v] = 1 - old;
      st.ell += sigma[v] == 1 ? 1 : -1;
      for (Vertex u : g.rotation[v]) {
        if (old == 0) {  // v flipped 0 -> 1
          if (sigma[u] == 0) --st.b; else ++st.c;
        } else {  // 1 -> 0
          if (sigma[u] == 0) ++st.b; else --st.c;
        }
      }
      slot(st.b, st.c, st.ell)++;
    }
  }

  std::vector<Rational> pow_b(m + 1), pow_c(m + 1), pow_l(g.n + 1);
  pow_b[0] = pow_c[0] = pow_l[0] = 1;
  for (long i = 1; i <= m; ++i) {
    pow_b[i] = pow_b[i - 1] * p.beta;
    pow_c[i] = pow_c[i - 1] * p.gamma;
  }
  for (long i = 1; i <= g.n; ++i) pow_l[i] = pow_l[i - 1] * p.lambda;

  Rational z = 0;
  for (long b = 0; b <= m; ++b)
    for (long c = 0; c <= m; ++c)
      for (long l = 0; l <= g.n; ++l) {
        std::uint64_t cnt = slot(b, c, l);
        if (cnt == 0) continue;
        z += Rational(static_cast<unsigned long>(cnt)) * pow_b[b] * pow_c[c] * pow_l[l];
      }
  return z;
}

}  // namespace twospin
