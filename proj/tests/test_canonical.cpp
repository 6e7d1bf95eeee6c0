#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <set>

#include "support.hpp"
#include "surfends/exhaustion/builders.hpp"
#include "surfends/residual/canonical.hpp"

using namespace surfends;

namespace {

void require_ok(const CanonicalExhaustion& c) {
  for (const auto& check : c.checks) {
    CAPTURE(check.name);
    CAPTURE(check.detail);
    CHECK(check.ok);
  }
}

// Components of U - G_n by quadratic BFS on the refined complex, counting
// adjacency only through edges that are not in K.
int rest_components(const CanonicalExhaustion& c, std::int32_t n) {
  auto g = c.g_mask(n);
  const auto& t = c.complex;
  std::vector<char> keep(t.face_count(), 0);
  for (FaceId f = 0; f < t.face_count(); ++f) keep[f] = c.e_index[f] != kNone && !g[f];
  std::vector<int> seen(t.face_count(), 0);
  int comps = 0;
  for (FaceId f = 0; f < t.face_count(); ++f) {
    if (!keep[f] || seen[f]) continue;
    ++comps;
    std::vector<FaceId> stack{f};
    seen[f] = 1;
    while (!stack.empty()) {
      FaceId a = stack.back();
      stack.pop_back();
      for (FaceId b = 0; b < t.face_count(); ++b) {
        if (!keep[b] || seen[b] || !oracle::share_edge(t.face(a), t.face(b))) continue;
        std::vector<VertexId> common;
        for (VertexId x : t.face(a))
          for (VertexId y : t.face(b))
            if (x == y) common.push_back(x);
        auto e = t.find_edge(common[0], common[1]);
        if (c.k.has_edge(*e)) continue;
        seen[b] = 1;
        stack.push_back(b);
      }
    }
  }
  return comps;
}

CellSet block_cells(const LayeredComplex& lc) {
  CellSet k;
  for (FaceId f = 0; f < lc.complex.face_count(); ++f)
    if (lc.face_layer[f] == 1) k.faces.push_back(f);
  return k;
}

}  // namespace

TEST_CASE("plane with a 2x2 block removed") {
  auto plane = plane_grid_stream();
  auto lc = plane.materialize(5);
  auto k = block_cells(*lc);
  REQUIRE(k.faces.size() == 8);
  auto c = canonical_exhaustion(plane, k, 0, 4);
  require_ok(c);
  CHECK(c.n0 == 2);
  CHECK(c.u_plus_components == 1);
  CHECK(c.xi.size() == 1);
  CHECK(c.stream_leaves == 1);
  REQUIRE(c.collar_ends.size() == 1);
  CHECK(c.collar_ends[0].impression.edges.size() == 8);
  CHECK(c.collar_ends[0].impression.vertices.size() == 8);
  CHECK(c.collar_ends[0].regular);
  // One piece hugging K and one piece at infinity, for every n.
  for (std::int32_t n = 1; n <= c.rounds; ++n) CHECK(rest_components(c, n) == 2);
  // U_- is an annulus: one xi cycle outside, K inside.
  auto shape = region_shape(c.complex, c.u_minus);
  CHECK(shape.euler == 0);
  CHECK(shape.boundary_cycles == 2);
}

TEST_CASE("G_n grows inside U") {
  auto plane = plane_grid_stream();
  auto lc = plane.materialize(5);
  auto c = canonical_exhaustion(plane, block_cells(*lc), 0, 4);
  std::int64_t previous = 0;
  for (std::int32_t n = 1; n <= c.rounds; ++n) {
    auto g = c.g_mask(n);
    std::int64_t count = 0;
    for (std::size_t f = 0; f < g.size(); ++f) {
      count += g[f];
      if (g[f]) CHECK(c.e_index[f] != kNone);
      if (n > 1 && c.g_mask(n - 1)[f]) CHECK(g[f]);
    }
    CHECK(count > previous);
    previous = count;
  }
}

TEST_CASE("cylinder with a meridian arc removed") {
  auto cyl = cylinder_stream();
  auto lc = cyl.materialize(6);
  CellSet k;
  for (EdgeId e = 0; e < lc->complex.edge_count(); ++e) {
    auto [a, b] = lc->complex.edge(e);
    auto pa = lc->vertex_coords[a], pb = lc->vertex_coords[b];
    if (pa[1] == 0 && pb[1] == 0 && std::min(pa[0], pb[0]) <= 1 && std::max(pa[0], pb[0]) <= 2)
      k.edges.push_back(Edge{a, b});
  }
  REQUIRE(k.edges.size() == 2);
  auto c = canonical_exhaustion(cyl, k, 0, 5);
  require_ok(c);
  CHECK(c.u_plus_components == 2);
  CHECK(c.xi.size() == 2);
  CHECK(c.stream_leaves == 2);
  CHECK(c.collar_ends.size() == 1);
}

TEST_CASE("plane with one face removed has one end each way") {
  auto plane = plane_grid_stream();
  auto c = canonical_exhaustion(plane, CellSet{{0}, {}, {}}, 0, 4);
  require_ok(c);
  CHECK(c.collar_ends.size() == 1);
  CHECK(c.stream_leaves == 1);
}

TEST_CASE("compact ambient has empty U_plus") {
  auto s = fixtures::octahedron();
  auto k = Subcomplex::closure_of(s, {}, std::vector<Edge>{Edge::of(1, 2), Edge::of(2, 3), Edge::of(3, 4), Edge::of(1, 4)}, {});
  auto c = canonical_exhaustion(s, k, 0, 3);
  require_ok(c);
  CHECK(c.u_plus.empty());
  CHECK(c.xi.empty());
  CHECK(c.collar_ends.size() == 1);
  for (std::int32_t n = 1; n <= 3; ++n) CHECK(rest_components(c, n) == 1);
}

TEST_CASE("compact ambient: torus meridian gives two collar ends") {
  auto s = fixtures::periodic_grid(3, 3, false);
  auto k = Subcomplex::closure_of(s, {}, std::vector<Edge>{Edge::of(0, 1), Edge::of(1, 2), Edge::of(0, 2)}, {});
  auto c = canonical_exhaustion(s, k, 0, 2);
  require_ok(c);
  CHECK(c.collar_ends.size() == 2);
}

TEST_CASE("horizon too shallow for F_0") {
  auto plane = plane_grid_stream();
  auto lc = plane.materialize(3);
  CHECK_THROWS_AS(canonical_exhaustion(plane, block_cells(*lc), 0, 2), Error);
}
