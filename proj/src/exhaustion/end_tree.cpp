#include "surfends/exhaustion/end_tree.hpp"

#include <algorithm>
#include <set>

#include "surfends/core/parallel.hpp"
#include "surfends/core/region.hpp"

namespace surfends {

EndTree end_tree(const ExhaustionStream& stream, std::int32_t horizon) {
  if (horizon < 1) throw Error(Error::Kind::InvalidArgument, "horizon must be at least 1");
  EndTree tree;
  tree.horizon = horizon;
  tree.universe = stream.materialize(horizon + 1);
  const LayeredComplex& u = *tree.universe;
  const auto& s = u.complex;

  std::vector<std::vector<std::int32_t>> labels(horizon + 1);
  std::vector<std::int32_t> counts(horizon + 1);
  std::vector<DepthBoundary> boundaries(horizon + 1);
  parallel_for(horizon + 1, [&](std::int64_t i) {
    auto n = static_cast<std::int32_t>(i);
    counts[n] = complement_components(u, n, labels[n]);
    if (n >= 1) boundaries[n] = depth_boundary(u, n);
  });
  if (counts[0] != 1) throw_domain("stream universe at depth " + std::to_string(horizon + 1) + " is not connected");

  tree.by_depth.resize(horizon + 1);
  tree.face_node.resize(horizon + 1);
  tree.boundary_cycles.assign(horizon + 1, 0);
  std::vector<std::int32_t> offset(horizon + 1, 0);
  for (std::int32_t n = 0; n <= horizon; ++n) {
    offset[n] = static_cast<std::int32_t>(tree.nodes.size());
    for (std::int32_t c = 0; c < counts[n]; ++c) {
      EndTreeNode node;
      node.depth = n;
      tree.by_depth[n].push_back(offset[n] + c);
      tree.nodes.push_back(std::move(node));
    }
    auto& fn = tree.face_node[n];
    fn.assign(s.face_count(), kNone);
    for (FaceId f = 0; f < s.face_count(); ++f)
      if (labels[n][f] != kNone) {
        fn[f] = offset[n] + labels[n][f];
        tree.nodes[fn[f]].faces.push_back(f);
      }
    if (n >= 1) {
      const auto& b = boundaries[n];
      tree.boundary_cycles[n] = static_cast<std::int32_t>(b.frontier.size() + b.mixed.size() + b.ambient.size());
    }
  }

  // Parents, attaching cycles and shapes.
  for (std::int32_t n = 1; n <= horizon; ++n) {
    for (std::int32_t id : tree.by_depth[n]) {
      auto& node = tree.nodes[id];
      node.parent = tree.face_node[n - 1][node.faces.front()];
      tree.nodes[node.parent].children.push_back(id);
    }
    std::vector<const BoundaryCycle*> cycles;
    for (const auto& c : boundaries[n].frontier) cycles.push_back(&c);
    for (const auto& c : boundaries[n].mixed) cycles.push_back(&c);
    std::vector<std::set<std::int32_t>> touched(tree.nodes.size());
    for (std::size_t ci = 0; ci < cycles.size(); ++ci)
      for (VertexId v : cycles[ci]->vertices)
        for (FaceId f : s.vertex_faces(v))
          if (tree.face_node[n][f] != kNone) touched[tree.face_node[n][f]].insert(static_cast<std::int32_t>(ci));
    for (std::int32_t id : tree.by_depth[n])
      if (touched[id].size() == 1) tree.nodes[id].attaching_cycle = *touched[id].begin();
  }
  parallel_for(static_cast<std::int64_t>(tree.nodes.size()), [&](std::int64_t i) {
    auto& node = tree.nodes[i];
    auto shape = region_shape(s, node.faces);
    node.orientable = shape.orientable;
    node.euler_genus = shape.genus.euler_genus();
  });
  return tree;
}

EndsResult ends_of(const EndTree& tree, const StreamInfo& info) {
  EndsResult out;
  const std::int32_t h = tree.horizon;
  out.horizon = h;
  out.leaf_counts.assign(h + 1, 1);
  for (std::int32_t n = 1; n <= h; ++n) out.leaf_counts[n] = tree.leaf_count(n);
  for (std::int32_t leaf : tree.by_depth[h]) {
    End e;
    e.index = static_cast<std::int32_t>(out.ends.size());
    e.path.assign(h + 1, kNone);
    for (std::int32_t id = leaf; id != kNone; id = tree.nodes[id].parent) e.path[tree.nodes[id].depth] = id;
    const auto& deepest = tree.nodes[leaf];
    e.orientable = deepest.orientable;
    e.planar = deepest.euler_genus == 0 && deepest.orientable;
    for (std::int32_t n = h; n >= 1 && tree.nodes[e.path[n]].euler_genus > 0; --n) e.first_nonplanar_depth = n;
    for (std::int32_t n = h; n >= 1 && !tree.nodes[e.path[n]].orientable; --n) e.first_nonorientable_depth = n;
    out.ends.push_back(std::move(e));
  }
  const std::int32_t window = std::max(2, h / 4);
  if (h >= window) {
    out.stabilized = true;
    for (std::int32_t n = h - window + 1; n <= h; ++n)
      if (out.leaf_counts[n] != out.leaf_counts[h]) out.stabilized = false;
  }
  out.exact = out.stabilized && info.finite_type;
  out.qualifiers.push_back("at horizon " + std::to_string(h));
  if (!out.exact)
    out.qualifiers.push_back(out.stabilized ? "heuristic: leaf count stable over the last " + std::to_string(window) +
                                                  " depths"
                                            : "not stabilized");
  out.qualifiers.push_back("trusted: exhaustive producer");
  return out;
}

EndsResult ends(const ExhaustionStream& stream, std::int32_t horizon) {
  return ends_of(end_tree(stream, horizon), stream.info());
}

PlanarityReport end_is_planar(const EndsResult& ends, std::int32_t end_index) {
  if (end_index < 0 || end_index >= static_cast<std::int32_t>(ends.ends.size()))
    throw_domain("end " + std::to_string(end_index) + " is not in the tree");
  const End& e = ends.ends[end_index];
  PlanarityReport r;
  r.first_nonplanar_depth = e.first_nonplanar_depth;
  r.first_nonorientable_depth = e.first_nonorientable_depth;
  r.kind = !e.orientable ? EndKind::Nonorientable : (e.planar ? EndKind::Planar : EndKind::Nonplanar);
  r.qualifier = "at horizon " + std::to_string(ends.horizon);
  return r;
}

std::int32_t classify_ray(const EndTree& tree, const EndsResult& ends, std::span<const FaceId> ray) {
  const LayeredComplex& u = *tree.universe;
  const auto& s = u.complex;
  if (ray.empty()) throw_domain("empty ray");
  for (FaceId f : ray)
    if (f < 0 || f >= s.face_count()) throw_domain("ray face " + std::to_string(f) + " is beyond the horizon");
  for (std::size_t i = 1; i < ray.size(); ++i) {
    bool adjacent = false;
    for (EdgeId e : s.face_edges(ray[i - 1]))
      if (e != kNone && s.across(e, ray[i - 1]) == ray[i]) adjacent = true;
    if (!adjacent)
      throw_domain("ray faces " + std::to_string(ray[i - 1]) + " and " + std::to_string(ray[i]) + " are not adjacent");
  }
  const std::int32_t h = tree.horizon;
  if (u.face_layer[ray.back()] <= h) throw_domain("not escaping: the ray ends inside F_" + std::to_string(h));
  std::int32_t leaf = tree.face_node[h][ray.back()];
  for (const auto& e : ends.ends)
    if (e.path[h] == leaf) return e.index;
  throw_domain("ray end not found in tree");
}

EndTriple end_triple(const EndsResult& ends) {
  EndTriple t;
  for (const auto& e : ends.ends) {
    ++t.ends;
    if (!e.planar) ++t.nonplanar;
    if (!e.orientable) ++t.nonorientable;
  }
  return t;
}

}  // namespace surfends
