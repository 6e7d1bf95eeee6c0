#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "support.hpp"
#include "surfends/exhaustion/builders.hpp"
#include "surfends/exhaustion/end_tree.hpp"

using namespace surfends;

namespace {

std::vector<char> complement_mask(const LayeredComplex& u, std::int32_t n) {
  std::vector<char> m(u.complex.face_count());
  for (FaceId f = 0; f < u.complex.face_count(); ++f) m[f] = u.face_layer[f] > n;
  return m;
}

std::vector<ExhaustionStream> all_builders() {
  std::vector<ExhaustionStream> v;
  v.push_back(plane_grid_stream());
  v.push_back(cylinder_stream());
  v.push_back(flute_stream());
  v.push_back(jacobs_ladder_stream());
  v.push_back(infinite_crosscap_stream());
  v.push_back(binary_tree_stream());
  v.push_back(model_stream({1, 0, 1, 2, 0, 0}));
  v.push_back(model_stream({0, 1, 0, 3, 1, 1}));
  return v;
}

// Shortest face path from `from` to `to` through edge-adjacent faces.
std::vector<FaceId> face_path(const SurfaceComplex& s, FaceId from, FaceId to) {
  std::vector<FaceId> prev(s.face_count(), kNone);
  std::vector<FaceId> queue{from};
  prev[from] = from;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    FaceId f = queue[i];
    if (f == to) break;
    for (EdgeId e : s.face_edges(f)) {
      FaceId g = s.across(e, f);
      if (g != kNone && prev[g] == kNone) {
        prev[g] = f;
        queue.push_back(g);
      }
    }
  }
  std::vector<FaceId> path;
  for (FaceId f = to; f != from; f = prev[f]) path.push_back(f);
  path.push_back(from);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

TEST_CASE("builders produce valid exhaustions") {
  for (auto& s : all_builders()) {
    CAPTURE(s.info().name);
    auto r = validate_exhaustion(s, 6);
    for (const auto& i : r.issues) MESSAGE(i.code << ": " << i.message);
    CHECK(r.valid());
    CHECK(std::find(r.notes.begin(), r.notes.end(), "trusted: exhaustive producer") != r.notes.end());
  }
}

TEST_CASE("half-plane boundary is flagged as a warning") {
  auto r = validate_exhaustion(half_plane_stream(), 4);
  CHECK(r.valid());
  bool warned = false;
  for (const auto& n : r.notes) warned |= n.find("non-compact boundary") != std::string::npos;
  CHECK(warned);
}

TEST_CASE("a stream that does not grow violates axiom (a)") {
  auto lc = *plane_grid_stream().materialize(4);
  for (auto& l : lc.face_layer) l = l == 1 ? 1 : l + 1;
  lc.depth = 5;
  auto s = fixed_stream(StreamInfo{}, lc);
  auto r = validate_exhaustion(s, 3);
  bool found = false;
  for (const auto& i : r.issues) found |= i.code == "axiom_a" && i.message.find("F_1 ") != std::string::npos;
  CHECK(found);
}

TEST_CASE("materializations are prefix-stable") {
  for (auto& s : all_builders()) {
    CAPTURE(s.info().name);
    auto small = s.materialize(3);
    auto large = s.materialize(6);
    REQUIRE(small->complex.face_count() <= large->complex.face_count());
    for (FaceId f = 0; f < small->complex.face_count(); ++f) {
      CHECK(small->complex.face(f) == large->complex.face(f));
      CHECK(small->face_layer[f] == large->face_layer[f]);
    }
  }
}

TEST_CASE("cylinder layers split into two annuli each meeting one cycle") {
  auto u = cylinder_stream().materialize(7);
  for (std::int32_t n = 1; n <= 6; ++n) {
    std::vector<char> slab(u->complex.face_count());
    for (FaceId f = 0; f < u->complex.face_count(); ++f) slab[f] = u->face_layer[f] == n + 1;
    CHECK(oracle::face_components(u->complex, slab) == 2);
  }
}

TEST_CASE("end trees match brute-force component enumeration") {
  for (auto& s : all_builders()) {
    CAPTURE(s.info().name);
    const std::int32_t h = s.info().name == "binary-tree" ? 5 : 6;
    auto tree = end_tree(s, h);
    for (std::int32_t n = 1; n <= h; ++n) {
      CAPTURE(n);
      CHECK(tree.leaf_count(n) == oracle::face_components(tree.universe->complex, complement_mask(*tree.universe, n)));
      // Remark R10: leaves never outnumber the boundary cycles of F_n.
      CHECK(tree.leaf_count(n) <= tree.boundary_cycles[n]);
      for (std::int32_t id : tree.by_depth[n]) {
        const auto& node = tree.nodes[id];
        const auto& parent = tree.nodes[node.parent];
        CHECK(std::includes(parent.faces.begin(), parent.faces.end(), node.faces.begin(), node.faces.end()));
        CHECK(parent.euler_genus >= node.euler_genus);
      }
    }
  }
}

TEST_CASE("end counts per builder") {
  auto plane = ends(plane_grid_stream(), 8);
  CHECK(plane.ends.size() == 1);
  CHECK(plane.stabilized);
  CHECK(plane.exact);
  auto tree = end_tree(plane_grid_stream(), 8);
  for (std::int32_t n = 1; n <= 8; ++n) CHECK(tree.leaf_count(n) == 1);

  auto cyl = ends(cylinder_stream(), 8);
  CHECK(cyl.ends.size() == 2);
  CHECK(cyl.stabilized);

  auto bin = end_tree(binary_tree_stream(), 5);
  CHECK(bin.leaf_count(5) == 32);
  auto u = bin.universe;
  CHECK(oracle::face_components(u->complex, complement_mask(*u, 5)) == 32);

  auto flute = ends(flute_stream(), 10);
  CHECK_FALSE(flute.stabilized);
  auto fu = flute_stream().materialize(11);
  for (std::int32_t n = 1; n <= 10; ++n)
    CHECK(flute.leaf_counts[n] == oracle::face_components(fu->complex, complement_mask(*fu, n)));
  CHECK(flute.leaf_counts[10] > flute.leaf_counts[5]);
}

TEST_CASE("planarity of ends") {
  auto cyl = ends(cylinder_stream(), 8);
  for (std::int32_t i = 0; i < 2; ++i) CHECK(end_is_planar(cyl, i).kind == EndKind::Planar);
  auto jl = ends(jacobs_ladder_stream(), 8);
  REQUIRE(jl.ends.size() == 2);
  for (std::int32_t i = 0; i < 2; ++i) {
    auto p = end_is_planar(jl, i);
    CHECK(p.kind == EndKind::Nonplanar);
    CHECK(p.first_nonplanar_depth == 1);
  }
  auto xc = ends(infinite_crosscap_stream(), 8);
  REQUIRE(xc.ends.size() == 1);
  CHECK(end_is_planar(xc, 0).kind == EndKind::Nonorientable);
  CHECK_THROWS_AS(end_is_planar(xc, 3), Error);
}

TEST_CASE("rays are classified by the component they escape into") {
  for (auto& s : {cylinder_stream(), binary_tree_stream(), plane_grid_stream()}) {
    CAPTURE(s.info().name);
    const std::int32_t h = 4;
    auto tree = end_tree(s, h);
    auto e = ends_of(tree, s.info());
    const auto& u = *tree.universe;
    std::vector<std::int32_t> label(u.complex.face_count(), -1);
    // Oracle labels: BFS over layer > h faces.
    auto mask = complement_mask(u, h);
    std::set<std::int32_t> seen_ends;
    for (FaceId t = 0; t < u.complex.face_count(); ++t) {
      if (!mask[t] || label[t] >= 0) continue;
      std::vector<FaceId> comp{t};
      label[t] = t;
      for (std::size_t i = 0; i < comp.size(); ++i)
        for (EdgeId ed : u.complex.face_edges(comp[i])) {
          FaceId g = u.complex.across(ed, comp[i]);
          if (g != kNone && mask[g] && label[g] < 0) {
            label[g] = t;
            comp.push_back(g);
          }
        }
      auto ray = face_path(u.complex, 0, t);
      seen_ends.insert(classify_ray(tree, e, ray));
    }
    CHECK(seen_ends.size() == e.ends.size());
    std::vector<FaceId> stuck{0};
    CHECK_THROWS_WITH_AS(classify_ray(tree, e, stuck), doctest::Contains("not escaping"), Error);
  }
}

TEST_CASE("leftmost binary-tree ray lands in the first branch") {
  auto s = binary_tree_stream();
  auto tree = end_tree(s, 4);
  auto e = ends_of(tree, s.info());
  const auto& leftmost = tree.nodes[tree.by_depth[4].front()];
  auto ray = face_path(tree.universe->complex, 0, leftmost.faces.front());
  CHECK(classify_ray(tree, e, ray) == 0);
}

TEST_CASE("subsampled streams give the same branches") {
  for (auto& s : {cylinder_stream(), flute_stream(), binary_tree_stream()}) {
    CAPTURE(s.info().name);
    auto half = subsample(s, 2);
    auto fine = end_tree(s, 7);
    auto coarse = end_tree(half, 3);
    const auto& fu = *fine.universe;
    for (std::int32_t m = 1; m <= 3; ++m) {
      std::set<std::vector<FaceId>> a, b;
      for (std::int32_t id : fine.by_depth[2 * m]) a.insert(fine.nodes[id].faces);
      for (std::int32_t id : coarse.by_depth[m]) {
        std::vector<FaceId> kept;
        for (FaceId f : coarse.nodes[id].faces)
          if (f < fu.complex.face_count()) kept.push_back(f);
        b.insert(kept);
      }
      CHECK(a == b);
    }
  }
}
