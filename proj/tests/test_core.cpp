#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "support.hpp"
#include "surfends/core/assembler.hpp"
#include "surfends/core/region.hpp"
#include "surfends/core/subdivide.hpp"

using namespace surfends;

namespace {

bool has_issue(const ValidationReport& r, const std::string& code) {
  for (const auto& i : r.issues)
    if (i.code == code) return true;
  return false;
}

}  // namespace

TEST_CASE("validation accepts closed and bordered surfaces") {
  CHECK(validate_surface(fixtures::tetrahedron()).valid());
  CHECK(validate_surface(fixtures::torus7()).valid());
  CHECK(validate_surface(fixtures::klein_bottle()).valid());
  CHECK(validate_surface(fixtures::mobius()).valid());
  CHECK(validate_surface(fixtures::annulus()).valid());
  CHECK(validate_surface(fixtures::pants()).valid());
}

TEST_CASE("three faces on one edge violate edge incidence") {
  SurfaceComplex s(5, {{0, 1, 2}, {0, 1, 3}, {0, 1, 4}});
  auto r = validate_surface(s);
  REQUIRE_FALSE(r.valid());
  REQUIRE(has_issue(r, "edge_incidence"));
  for (const auto& i : r.issues)
    if (i.code == "edge_incidence") CHECK(i.cells == std::vector<std::int32_t>{0, 1});
}

TEST_CASE("bowtie is a pinched vertex") {
  auto r = validate_surface(fixtures::bowtie());
  REQUIRE(has_issue(r, "pinched_vertex"));
  for (const auto& i : r.issues)
    if (i.code == "pinched_vertex") CHECK(i.cells == std::vector<std::int32_t>{0});
}

TEST_CASE("duplicate and degenerate faces are reported") {
  CHECK(has_issue(validate_surface(SurfaceComplex(3, {{0, 1, 2}, {2, 1, 0}})), "duplicate_face"));
  CHECK(has_issue(validate_surface(SurfaceComplex(3, {{0, 1, 1}})), "degenerate_face"));
}

TEST_CASE("euler characteristic matches direct simplex counts") {
  for (const auto& s : {fixtures::tetrahedron(), fixtures::torus7(), fixtures::triangle(), fixtures::klein_bottle(),
                        fixtures::mobius(), fixtures::annulus(), fixtures::pants()}) {
    CHECK(euler_characteristic(s) == oracle::euler(s));
  }
  auto c = oracle::simplex_counts(fixtures::torus7());
  CHECK(c.v == 7);
  CHECK(c.e == 21);
  CHECK(c.f == 14);
  CHECK(euler_characteristic(fixtures::tetrahedron()) == 2);
  CHECK(euler_characteristic(fixtures::triangle()) == 1);
}

TEST_CASE("connected components") {
  CHECK(connected_components(fixtures::tetrahedron()).size() == 1);
  auto both = disjoint_union(fixtures::tetrahedron(), fixtures::torus7());
  auto comps = connected_components(both);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].faces.size() == 4);
  CHECK(comps[1].faces.size() == 14);
  auto big = fixtures::grid_disk(100, 100);
  CHECK(connected_components(big).size() == 1);
  auto small = fixtures::grid_disk(12, 9);
  CHECK(static_cast<int>(connected_components(small).size()) == oracle::face_components(small));
}

TEST_CASE("boundary cycles cover exactly the boundary edges") {
  CHECK(boundary_components(fixtures::triangle()).size() == 1);
  CHECK(boundary_components(fixtures::triangle())[0].edges.size() == 3);
  CHECK(boundary_components(fixtures::torus7()).empty());
  for (const auto& s : {fixtures::annulus(), fixtures::pants(), fixtures::mobius(), fixtures::grid_disk(5, 4)}) {
    auto cycles = boundary_components(s);
    CHECK(static_cast<int>(cycles.size()) == oracle::boundary_circle_count(s));
    std::set<EdgeId> seen;
    std::size_t total = 0;
    for (const auto& c : cycles) {
      total += c.edges.size();
      for (EdgeId e : c.edges) {
        CHECK(s.is_boundary_edge(e));
        seen.insert(e);
      }
    }
    CHECK(total == seen.size());
    CHECK(static_cast<int>(seen.size()) == oracle::boundary_edge_count(s));
  }
  CHECK(boundary_components(fixtures::annulus()).size() == 2);
}

TEST_CASE("orientability agrees with the orientation double cover") {
  CHECK(orientability(fixtures::torus7())[0] == Orientability::Orientable);
  CHECK(orientability(fixtures::mobius())[0] == Orientability::Nonorientable);
  CHECK(orientability(fixtures::klein_bottle())[0] == Orientability::Nonorientable);
  CHECK_FALSE(oracle::orientable(fixtures::mobius()));
  CHECK_FALSE(oracle::orientable(fixtures::klein_bottle()));
  CHECK(oracle::orientable(fixtures::torus7()));
  auto r = orient(fixtures::mobius());
  CHECK_FALSE(r.orientable);
  CHECK(r.conflict_edge != kNone);
}

TEST_CASE("orientability is invariant under vertex relabeling") {
  std::mt19937_64 rng(7);
  for (const auto& s : {fixtures::torus7(), fixtures::klein_bottle(), fixtures::mobius(), fixtures::pants()}) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<VertexId> perm(s.vertex_count());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      auto t = relabel(s, perm);
      CHECK(orientability(t) == orientability(s));
      CHECK(genus(t) == genus(s));
    }
  }
}

TEST_CASE("genus with orientability tag") {
  CHECK(genus(fixtures::torus7()) == Genus{Orientability::Orientable, 1});
  CHECK(genus(fixtures::torus_grid()) == Genus{Orientability::Orientable, 1});
  CHECK(genus(fixtures::klein_bottle()) == Genus{Orientability::Nonorientable, 2});
  auto p = fixtures::pants();
  CHECK(oracle::euler(p) == -1);
  CHECK(oracle::boundary_circle_count(p) == 3);
  CHECK(genus(p) == Genus{Orientability::Orientable, 0});
  CHECK(genus(fixtures::mobius()) == Genus{Orientability::Nonorientable, 1});
  CHECK_THROWS_AS(genus(disjoint_union(fixtures::tetrahedron(), fixtures::torus7())), Error);
}

TEST_CASE("barycentric subdivision preserves invariants") {
  for (const auto& s : {fixtures::torus7(), fixtures::klein_bottle(), fixtures::mobius(), fixtures::pants(),
                        fixtures::annulus()}) {
    auto sd = barycentric_subdivision(s);
    CHECK(validate_surface(sd.complex).valid());
    CHECK(sd.complex.face_count() == 6 * s.face_count());
    CHECK(euler_characteristic(sd.complex) == euler_characteristic(s));
    CHECK(boundary_components(sd.complex).size() == boundary_components(s).size());
    CHECK(genus(sd.complex) == genus(s));
  }
}

TEST_CASE("subdivided subcomplex keeps its shape") {
  auto s = fixtures::octahedron();
  std::vector<Edge> equator{Edge::of(1, 2), Edge::of(2, 3), Edge::of(3, 4), Edge::of(4, 1)};
  auto k = Subcomplex::closure_of(s, {}, equator, {});
  auto sd = barycentric_subdivision(s);
  auto k2 = subdivide_subcomplex(sd, s, k);
  CHECK(k2.vertices().size() == 8);
  CHECK(k2.edges().size() == 8);
  CHECK(k2.faces().empty());
}

TEST_CASE("closure adds implied cells") {
  auto s = fixtures::tetrahedron();
  std::int32_t added = 0;
  std::vector<FaceId> faces{0};
  auto k = Subcomplex::closure_of(s, faces, {}, {}, &added);
  CHECK(added == 6);
  CHECK(k.vertices().size() == 3);
  CHECK(k.edges().size() == 3);
}

TEST_CASE("region shape and frontier") {
  auto s = fixtures::grid_disk(4, 4);
  std::vector<FaceId> all(s.face_count());
  std::iota(all.begin(), all.end(), 0);
  auto shape = region_shape(s, all);
  CHECK(shape.euler == 1);
  CHECK(shape.boundary_cycles == 1);
  // Open disk minus nothing: the open region omits the boundary circle.
  CHECK(open_euler_characteristic(s, all) == 1 - 0);
  // A region holding the whole disk keeps its boundary circle: no frontier.
  CHECK(frontier_cells(s, all).edges.empty());
  // Central 2x2 block: cells (1..2, 1..2), two faces per cell in row order.
  std::vector<FaceId> block;
  for (int y = 1; y <= 2; ++y)
    for (int x = 1; x <= 2; ++x) {
      block.push_back(2 * (y * 4 + x));
      block.push_back(2 * (y * 4 + x) + 1);
    }
  std::sort(block.begin(), block.end());
  auto fr = frontier_cells(s, block);
  CHECK(fr.edges.size() == 8);
  CHECK(fr.vertices.size() == 8);
  CHECK(cell_components(s, fr).size() == 1);
  CHECK(open_euler_characteristic(s, block) == 1);
}

TEST_CASE("building blocks are valid surfaces") {
  auto torus = SurfaceComplex(7, seven_vertex_torus());
  CHECK(validate_surface(torus).valid());
  CHECK(genus(torus) == Genus{Orientability::Orientable, 1});
  auto rp2 = SurfaceComplex(6, six_vertex_projective_plane());
  CHECK(validate_surface(rp2).valid());
  CHECK(oracle::euler(rp2) == 1);
  CHECK_FALSE(oracle::orientable(rp2));
  for (int h = 0; h <= 2; ++h)
    for (int c = 0; c <= 2; ++c)
      for (int b = 0; b <= 2; ++b) {
        auto m = compact_model(h, c, b);
        CAPTURE(h);
        CAPTURE(c);
        CAPTURE(b);
        REQUIRE(validate_surface(m).valid());
        CHECK(oracle::face_components(m) == 1);
        CHECK(oracle::boundary_circle_count(m) == b);
        CHECK(oracle::orientable(m) == (c == 0));
        CHECK(oracle::euler(m) == 2 - 2 * h - c - b);
      }
}
