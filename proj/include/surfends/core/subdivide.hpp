#pragma once

#include <vector>

#include "surfends/core/complex.hpp"

namespace surfends {

/// The cell of the parent complex whose relative interior contains a point.
struct Carrier {
  std::int8_t dim = 0;  // 0 vertex, 1 edge, 2 face
  std::int32_t id = 0;
  friend bool operator==(const Carrier&, const Carrier&) = default;
  friend auto operator<=>(const Carrier&, const Carrier&) = default;
};

/// First barycentric subdivision. Vertex ids: parent vertices, then edge
/// barycenters (parent edge order), then face barycenters. Each parent face
/// becomes six consecutive faces with the parent's orientation.
struct Subdivision {
  SurfaceComplex complex;
  std::vector<Carrier> vertex_carrier;
  std::vector<FaceId> face_parent;

  /// Carrier of the open cell spanned by the given child vertices.
  Carrier carrier_of(std::span<const VertexId> child_vertices) const;
};

Subdivision barycentric_subdivision(const SurfaceComplex& s);

/// The subdivided copy of a parent subcomplex (a full subcomplex of the child).
Subcomplex subdivide_subcomplex(const Subdivision& sd, const SurfaceComplex& parent, const Subcomplex& k);

}  // namespace surfends
