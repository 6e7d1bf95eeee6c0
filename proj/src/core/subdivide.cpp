#include "surfends/core/subdivide.hpp"

#include <algorithm>

namespace surfends {

Carrier Subdivision::carrier_of(std::span<const VertexId> child_vertices) const {
  Carrier best = vertex_carrier[child_vertices.front()];
  for (VertexId v : child_vertices) best = std::max(best, vertex_carrier[v]);
  return best;
}

Subdivision barycentric_subdivision(const SurfaceComplex& s) {
  Subdivision sd;
  const auto nv = s.vertex_count();
  const auto ne = s.edge_count();
  const auto nf = s.face_count();
  sd.vertex_carrier.reserve(static_cast<std::size_t>(nv + ne + nf));
  for (VertexId v = 0; v < nv; ++v) sd.vertex_carrier.push_back({0, v});
  for (EdgeId e = 0; e < ne; ++e) sd.vertex_carrier.push_back({1, e});
  for (FaceId f = 0; f < nf; ++f) sd.vertex_carrier.push_back({2, f});

  std::vector<Triangle> faces;
  faces.reserve(static_cast<std::size_t>(nf) * 6);
  sd.face_parent.reserve(static_cast<std::size_t>(nf) * 6);
  for (FaceId f = 0; f < nf; ++f) {
    if (s.is_degenerate(f)) continue;
    const auto& t = s.face(f);
    const auto& fe = s.face_edges(f);
    const VertexId center = nv + ne + f;
    for (int i = 0; i < 3; ++i) {
      const VertexId mid = nv + fe[i];  // edge t[i] t[i+1]
      faces.push_back({t[i], mid, center});
      faces.push_back({mid, t[(i + 1) % 3], center});
      sd.face_parent.push_back(f);
      sd.face_parent.push_back(f);
    }
  }
  sd.complex = SurfaceComplex(nv + ne + nf, std::move(faces));
  return sd;
}

Subcomplex subdivide_subcomplex(const Subdivision& sd, const SurfaceComplex& parent, const Subcomplex& k) {
  auto in_k = [&](VertexId child) {
    const auto& c = sd.vertex_carrier[child];
    switch (c.dim) {
      case 0: return k.has_vertex(c.id);
      case 1: return k.has_edge(c.id);
      default: return k.has_face(c.id);
    }
  };
  (void)parent;
  const auto& c = sd.complex;
  std::vector<VertexId> verts;
  std::vector<Edge> edges;
  std::vector<FaceId> faces;
  for (VertexId v = 0; v < c.vertex_count(); ++v) {
    if (in_k(v)) verts.push_back(v);
  }
  for (EdgeId e = 0; e < c.edge_count(); ++e) {
    auto ed = c.edge(e);
    if (in_k(ed.first) && in_k(ed.second)) edges.push_back(ed);
  }
  for (FaceId f = 0; f < c.face_count(); ++f) {
    if (k.has_face(sd.face_parent[f])) faces.push_back(f);
  }
  return Subcomplex::closure_of(c, faces, edges, verts);
}

}  // namespace surfends
