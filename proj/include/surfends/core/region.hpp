#pragma once

// Operations on face sets read as open regions of a SurfaceComplex.

#include <span>
#include <vector>

#include "surfends/core/complex.hpp"

namespace surfends {

std::vector<char> face_mask_of(const SurfaceComplex& s, std::span<const FaceId> faces);

/// Closure of the given faces as a standalone complex. Corners are glued only
/// across shared edges that are not cut, so pinched vertices are resolved and
/// cut edges become boundary. `vertex_origin`, when given, receives the
/// ambient vertex of each new vertex.
SurfaceComplex region_complex(const SurfaceComplex& s, std::span<const FaceId> faces,
                              std::span<const char> cut_edges = {},
                              std::vector<VertexId>* vertex_origin = nullptr);

/// Topological summary of the resolved closure of a face set.
struct RegionShape {
  std::int64_t euler = 0;
  std::int32_t boundary_cycles = 0;
  bool connected = true;
  bool orientable = true;
  Genus genus;
};

RegionShape region_shape(const SurfaceComplex& s, std::span<const FaceId> faces,
                         std::span<const char> cut_edges = {});

/// Euler characteristic of the open set carried by `faces`: open faces, open
/// edges whose incident faces are all listed, and vertices whose star is
/// listed, excluding every cell of `excluded` (typically K).
std::int64_t open_euler_characteristic(const SurfaceComplex& s, std::span<const FaceId> faces,
                                       const Subcomplex* excluded = nullptr);

/// Cells of cl(U) - U for the open region U carried by `faces`. Cells of
/// `excluded` never belong to U, so those in cl(U) are always frontier.
struct FrontierCells {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
  friend bool operator==(const FrontierCells&, const FrontierCells&) = default;
};

FrontierCells frontier_cells(const SurfaceComplex& s, std::span<const FaceId> faces,
                             const Subcomplex* excluded = nullptr);

/// Connected pieces of a cell set (edges join their endpoints).
std::vector<FrontierCells> cell_components(const SurfaceComplex& s, const FrontierCells& cells);

}  // namespace surfends
