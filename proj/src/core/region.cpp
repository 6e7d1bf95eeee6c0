#include "surfends/core/region.hpp"

#include <algorithm>

#include "surfends/core/union_find.hpp"

namespace surfends {

std::vector<char> face_mask_of(const SurfaceComplex& s, std::span<const FaceId> faces) {
  std::vector<char> mask(s.face_count(), 0);
  for (FaceId f : faces) mask[f] = 1;
  return mask;
}

SurfaceComplex region_complex(const SurfaceComplex& s, std::span<const FaceId> faces,
                              std::span<const char> cut_edges, std::vector<VertexId>* vertex_origin) {
  const auto n = static_cast<std::int32_t>(faces.size());
  std::vector<std::int32_t> local(s.face_count(), kNone);
  for (std::int32_t i = 0; i < n; ++i) local[faces[i]] = i;
  // Corner (i, c) = corner c of the i-th listed face.
  UnionFind uf(3 * n);
  auto corner_of = [&](std::int32_t i, VertexId v) {
    const auto& t = s.face(faces[i]);
    for (int c = 0; c < 3; ++c) {
      if (t[c] == v) return 3 * i + c;
    }
    return static_cast<std::int32_t>(kNone);
  };
  for (std::int32_t i = 0; i < n; ++i) {
    for (EdgeId e : s.face_edges(faces[i])) {
      if (e == kNone) continue;
      if (!cut_edges.empty() && cut_edges[e]) continue;
      FaceId g = s.across(e, faces[i]);
      if (g == kNone || local[g] == kNone || local[g] < i) continue;
      auto [a, b] = s.edge(e);
      uf.unite(corner_of(i, a), corner_of(local[g], a));
      uf.unite(corner_of(i, b), corner_of(local[g], b));
    }
  }
  std::vector<std::int32_t> id(3 * n, kNone);
  std::vector<Triangle> out(n);
  std::int32_t next = 0;
  if (vertex_origin) vertex_origin->clear();
  for (std::int32_t i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) {
      auto r = uf.find(3 * i + c);
      if (id[r] == kNone) {
        id[r] = next++;
        if (vertex_origin) vertex_origin->push_back(s.face(faces[i])[c]);
      }
      out[i][c] = id[r];
    }
  }
  return SurfaceComplex(next, std::move(out));
}

RegionShape region_shape(const SurfaceComplex& s, std::span<const FaceId> faces,
                         std::span<const char> cut_edges) {
  RegionShape shape;
  auto c = region_complex(s, faces, cut_edges);
  shape.euler = euler_characteristic(c);
  shape.boundary_cycles = static_cast<std::int32_t>(boundary_components(c).size());
  shape.connected = connected_components(c).size() <= 1;
  shape.orientable = orient(c).orientable;
  shape.genus = genus_from_counts(shape.euler, shape.boundary_cycles, shape.orientable);
  return shape;
}

std::int64_t open_euler_characteristic(const SurfaceComplex& s, std::span<const FaceId> faces,
                                       const Subcomplex* excluded) {
  auto mask = face_mask_of(s, faces);
  std::int64_t chi = static_cast<std::int64_t>(faces.size());
  std::vector<char> seen_edge(s.edge_count(), 0);
  std::vector<char> seen_vertex(s.vertex_count(), 0);
  for (FaceId f : faces) {
    for (EdgeId e : s.face_edges(f)) {
      if (e == kNone || seen_edge[e]) continue;
      seen_edge[e] = 1;
      if (excluded && excluded->has_edge(e)) continue;
      auto fs = s.edge_faces(e);
      if (std::all_of(fs.begin(), fs.end(), [&](FaceId g) { return mask[g] != 0; })) --chi;
    }
    for (VertexId v : s.face(f)) {
      if (seen_vertex[v]) continue;
      seen_vertex[v] = 1;
      if (excluded && excluded->has_vertex(v)) continue;
      auto star = s.vertex_faces(v);
      if (std::all_of(star.begin(), star.end(), [&](FaceId g) { return mask[g] != 0; })) ++chi;
    }
  }
  return chi;
}

FrontierCells frontier_cells(const SurfaceComplex& s, std::span<const FaceId> faces, const Subcomplex* excluded) {
  auto mask = face_mask_of(s, faces);
  FrontierCells out;
  std::vector<char> seen_edge(s.edge_count(), 0);
  std::vector<char> seen_vertex(s.vertex_count(), 0);
  for (FaceId f : faces) {
    for (EdgeId e : s.face_edges(f)) {
      if (e == kNone || seen_edge[e]) continue;
      seen_edge[e] = 1;
      auto fs = s.edge_faces(e);
      if ((excluded && excluded->has_edge(e)) ||
          !std::all_of(fs.begin(), fs.end(), [&](FaceId g) { return mask[g] != 0; }))
        out.edges.push_back(e);
    }
    for (VertexId v : s.face(f)) {
      if (seen_vertex[v]) continue;
      seen_vertex[v] = 1;
      auto star = s.vertex_faces(v);
      if ((excluded && excluded->has_vertex(v)) ||
          !std::all_of(star.begin(), star.end(), [&](FaceId g) { return mask[g] != 0; }))
        out.vertices.push_back(v);
    }
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

std::vector<FrontierCells> cell_components(const SurfaceComplex& s, const FrontierCells& cells) {
  std::vector<VertexId> verts = cells.vertices;
  for (EdgeId e : cells.edges) {
    verts.push_back(s.edge(e).first);
    verts.push_back(s.edge(e).second);
  }
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  auto index = [&](VertexId v) {
    return static_cast<std::int32_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  };
  UnionFind uf(static_cast<std::int32_t>(verts.size()));
  for (EdgeId e : cells.edges) uf.unite(index(s.edge(e).first), index(s.edge(e).second));
  std::vector<std::int32_t> slot(verts.size(), kNone);
  std::vector<FrontierCells> out;
  auto piece = [&](VertexId v) -> FrontierCells& {
    auto r = uf.find(index(v));
    if (slot[r] == kNone) {
      slot[r] = static_cast<std::int32_t>(out.size());
      out.emplace_back();
    }
    return out[slot[r]];
  };
  // Visit vertices in order so pieces are numbered by smallest vertex.
  for (VertexId v : verts) piece(v);
  for (VertexId v : cells.vertices) piece(v).vertices.push_back(v);
  for (EdgeId e : cells.edges) piece(s.edge(e).first).edges.push_back(e);
  return out;
}

}  // namespace surfends
