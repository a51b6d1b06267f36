#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "twospin/contours.hpp"
#include "twospin/gadget.hpp"

using namespace twospin;

namespace {

Configuration random_config(const Gadget& g, std::mt19937_64& rng) {
  Configuration sigma(g.graph.n);
  for (auto& s : sigma) s = static_cast<int>(rng() & 1u);
  return sigma;
}

// Full validity audit of a contour decomposition against the definition:
// every trail edge is in sigma*, nothing is traversed twice, endpoints are
// closed or boundary, the mandatory turn happens at degree-4 vertices, and
// every sigma* edge is covered.
void audit_contours(const Gadget& g, const Configuration& sigma,
                    const std::vector<Contour>& contours) {
  DualGadget dual(g.nu);
  std::set<Edge> star = sigma_star(g, sigma);
  std::map<Vertex, int> deg;
  for (const auto& [a, b] : star) {
    deg[a]++;
    deg[b]++;
  }
  std::set<Edge> covered;
  for (const Contour& c : contours) {
    REQUIRE(c.trail.size() >= 2);
    for (std::size_t i = 0; i + 1 < c.trail.size(); ++i) {
      Edge e = make_edge(c.trail[i], c.trail[i + 1]);
      REQUIRE(star.count(e) == 1);
      REQUIRE(covered.count(e) == 0);  // no edge used twice anywhere
      covered.insert(e);
    }
    // endpoint discipline
    if (c.trail.front() != c.trail.back()) {
      auto [x1, y1] = dual.xy(c.trail.front());
      auto [x2, y2] = dual.xy(c.trail.back());
      REQUIRE((y1 == -1 || y1 == g.nu));
      REQUIRE((y2 == -1 || y2 == g.nu));
      CHECK((c.kind == (y1 != y2 ? ContourKind::cross : ContourKind::boundary_simple)));
    } else {
      CHECK(c.kind == ContourKind::closed_simple);
    }
    // turn rule at degree-4 dual vertices (including the closing corner)
    auto check_turn = [&](Vertex prev, Vertex mid, Vertex next) {
      if (deg[mid] != 4) return;
      auto [xp, yp] = dual.xy(prev);
      auto [xm, ym] = dual.xy(mid);
      auto [xn, yn] = dual.xy(next);
      (void)xm;
      (void)ym;
      bool dx = dual.wrap_x(xp) != dual.wrap_x(xn);
      bool dy = yp != yn;
      CHECK(dx);
      CHECK(dy);
    };
    for (std::size_t i = 1; i + 1 < c.trail.size(); ++i)
      check_turn(c.trail[i - 1], c.trail[i], c.trail[i + 1]);
    if (c.trail.front() == c.trail.back() && c.trail.size() >= 3)
      check_turn(c.trail[c.trail.size() - 2], c.trail.front(), c.trail[1]);
  }
  CHECK(covered.size() == star.size());  // full coverage
}

}  // namespace

TEST_CASE("alternating configurations have no contours") {
  Gadget g = build_gadget_nu(3);
  CHECK(extract_contours(g, alternating_config(g, 0)).empty());
  CHECK(extract_contours(g, alternating_config(g, 1)).empty());
}

TEST_CASE("a single interior flip produces one closed contour of length 4") {
  Gadget g = build_gadget_nu(4);
  Configuration sigma = alternating_config(g, 0);
  Vertex flipped = g.id(3, 2);
  sigma[flipped] ^= 1;
  auto contours = extract_contours(g, sigma);
  REQUIRE(contours.size() == 1);
  const Contour& c = contours.front();
  CHECK(c.kind == ContourKind::closed_simple);
  CHECK(c.length() == 4);
  CHECK_FALSE(c.wraps);
  audit_contours(g, sigma, contours);

  // one side is exactly the flipped vertex, the other its 4 neighbours
  std::set<Vertex> nbrs(g.graph.rotation[flipped].begin(), g.graph.rotation[flipped].end());
  bool left_is_flip = c.left == std::set<Vertex>{flipped} && c.right == nbrs;
  bool right_is_flip = c.right == std::set<Vertex>{flipped} && c.left == nbrs;
  CHECK((left_is_flip || right_is_flip));
}

TEST_CASE("all-zero configuration on C_3: cross contours and full coverage") {
  Gadget g = build_gadget_nu(3);
  Configuration zero(g.graph.n, 0);
  auto contours = extract_contours(g, zero);
  audit_contours(g, zero, contours);
  int crosses = 0;
  for (const auto& c : contours)
    if (c.kind == ContourKind::cross) ++crosses;
  CHECK(crosses > 0);
}

TEST_CASE("a horizontal interface produces a wrapping contour") {
  Gadget g = build_gadget_nu(4);
  // parity-0 ones on the lower half, parity-1 ones on the upper half:
  // all vertical edges between rows 1 and 2 become monochromatic
  Configuration sigma(g.graph.n, 0);
  for (Vertex v = 0; v < g.graph.n; ++v) {
    auto [x, y] = g.xy(v);
    int s = y <= 1 ? 0 : 1;
    sigma[v] = g.parity(v) == s ? 1 : 0;
  }
  auto contours = extract_contours(g, sigma);
  audit_contours(g, sigma, contours);
  bool any_wrap = false;
  for (const auto& c : contours) any_wrap |= c.wraps;
  CHECK(any_wrap);
}

TEST_CASE("contour sides have pure complementary parities (fuzzed)") {
  Gadget g = build_gadget_nu(4);
  std::mt19937_64 rng(911);
  for (int t = 0; t < 300; ++t) {
    Configuration sigma = random_config(g, rng);
    auto contours = extract_contours(g, sigma);
    audit_contours(g, sigma, contours);
    for (const auto& c : contours) {
      auto [left, right] = contour_sides(c);
      REQUIRE_FALSE(left.empty());
      REQUIRE_FALSE(right.empty());
      // disjoint sides
      for (Vertex v : left) CHECK(right.count(v) == 0);
      ParityClass pl = parity_ones(g, sigma, left);
      ParityClass pr = parity_ones(g, sigma, right);
      REQUIRE(pl != ParityClass::mixed);
      REQUIRE(pr != ParityClass::mixed);
      CHECK(pl != pr);
    }
  }
}

TEST_CASE("no two contours take transversal routes through a degree-4 vertex") {
  Gadget g = build_gadget_nu(4);
  std::mt19937_64 rng(4242);
  for (int t = 0; t < 100; ++t) {
    Configuration sigma = random_config(g, rng);
    auto contours = extract_contours(g, sigma);
    DualGadget dual(g.nu);
    std::set<Edge> star = sigma_star(g, sigma);
    std::map<Vertex, int> deg;
    for (const auto& [a, b] : star) {
      deg[a]++;
      deg[b]++;
    }
    // {W,N}/{E,S} pairing means no passage goes straight through a
    // degree-4 vertex, so no two contours can cross there
    for (const auto& c : contours) {
      for (std::size_t i = 1; i + 1 < c.trail.size(); ++i) {
        if (deg[c.trail[i]] != 4) continue;
        auto [xp, yp] = dual.xy(c.trail[i - 1]);
        auto [xn, yn] = dual.xy(c.trail[i + 1]);
        bool straight = (dual.wrap_x(xp) == dual.wrap_x(xn)) || (yp == yn);
        CHECK_FALSE(straight);
      }
    }
  }
}

TEST_CASE("doubled-coordinate trail serialization") {
  Gadget g = build_gadget_nu(3);
  Configuration sigma = alternating_config(g, 0);
  sigma[g.id(1, 1)] ^= 1;
  auto contours = extract_contours(g, sigma);
  REQUIRE(contours.size() == 1);
  auto pts = doubled_trail(g, contours.front());
  CHECK(pts.size() == contours.front().trail.size());
  for (auto [x, y] : pts) {
    CHECK(x % 2 == 1);  // half-integer coordinates doubled are odd
    CHECK(y % 2 != 0);
  }
}
