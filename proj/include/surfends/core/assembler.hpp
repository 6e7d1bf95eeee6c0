#pragma once

// Incremental construction of triangulated surfaces: grids, bands between
// cycles, cones, and connected sums with a torus or a projective plane at a
// face. Every face carries a layer so the same assembler produces the nested
// complexes of an exhaustion.

#include <array>
#include <climits>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "surfends/core/complex.hpp"

namespace surfends {

/// A finite complex whose faces are labeled with the first depth at which
/// they appear: F_n is the subcomplex of faces with layer <= n.
inline constexpr std::array<std::int32_t, 2> kOffLattice{INT32_MIN, INT32_MIN};

struct LayeredComplex {
  SurfaceComplex complex;
  std::vector<std::int32_t> face_layer;
  std::int32_t depth = 0;
  // Lattice position of each vertex for builders on a square grid; empty
  // otherwise. Vertices off the lattice hold kOffLattice.
  std::vector<std::array<std::int32_t, 2>> vertex_coords;

  std::vector<FaceId> faces_up_to(std::int32_t n) const;
  std::vector<char> mask_up_to(std::int32_t n) const;
  /// Vertices, edges and faces of F_n.
  Subcomplex subcomplex_up_to(std::int32_t n) const;
  /// Smallest layer of a face containing v.
  std::int32_t vertex_layer(VertexId v) const;
};

class Assembler {
 public:
  VertexId add_vertex() { return next_vertex_++; }
  std::vector<VertexId> add_cycle(std::int32_t length);

  /// Returns the face index in insertion order.
  std::size_t add_face(VertexId a, VertexId b, VertexId c, std::int32_t layer);
  void remove_face(std::size_t index) { removed_[index] = 1; }
  const Triangle& face(std::size_t index) const { return faces_[index]; }
  std::size_t face_count() const { return faces_.size(); }

  /// Annulus between two disjoint cycles (lengths >= 3), zigzag triangulated.
  /// Returns the indices of the new faces.
  std::vector<std::size_t> band(std::span<const VertexId> a, std::span<const VertexId> b, std::int32_t layer);
  /// Caps a cycle with a new apex vertex.
  VertexId cone(std::span<const VertexId> cycle, std::int32_t layer);

  /// Replaces the face by a punctured 7-vertex torus (adds one handle).
  void attach_handle(std::size_t face_index, std::int32_t layer);
  /// Replaces the face by a punctured 6-vertex projective plane (one crosscap).
  void attach_crosscap(std::size_t face_index, std::int32_t layer);

  /// Faces sorted stably by layer; vertices renumbered by first appearance so
  /// that every F_n uses a prefix of vertex ids and face ids.
  /// `renumber`, when given, receives the new id of every assembler vertex
  /// (kNone for vertices on no surviving face).
  LayeredComplex finish(std::int32_t depth, std::vector<VertexId>* renumber = nullptr) const;

 private:
  void attach_closed(std::size_t face_index, std::span<const Triangle> closed, std::int32_t nv,
                     const Triangle& removed, std::int32_t layer);

  VertexId next_vertex_ = 0;
  std::vector<Triangle> faces_;
  std::vector<std::int32_t> layers_;
  std::vector<char> removed_;
};

/// Square grid lattice helper: vertex ids created on demand per lattice point.
/// Each unit cell (x, y) is split along its (x,y)-(x+1,y+1) diagonal.
class LatticePatch {
 public:
  /// With a positive period, x coordinates wrap modulo the period.
  explicit LatticePatch(Assembler& a, std::int32_t period = 0) : a_(a), period_(period) {}

  VertexId at(std::int32_t x, std::int32_t y);
  /// Existing vertex at a lattice point, or kNone.
  VertexId find(std::int32_t x, std::int32_t y) const;
  /// Adds the two triangles of cell (x, y); returns their face indices.
  std::pair<std::size_t, std::size_t> add_cell(std::int32_t x, std::int32_t y, std::int32_t layer);
  /// Boundary 4-cycle of cell (x, y).
  std::vector<VertexId> cell_cycle(std::int32_t x, std::int32_t y);
  // Fills lc.vertex_coords given the renumbering returned by Assembler::finish.
  void record_coords(LayeredComplex& lc, const std::vector<VertexId>& renumber) const;

 private:
  std::int32_t wrap(std::int32_t x) const { return period_ > 0 ? ((x % period_) + period_) % period_ : x; }

  Assembler& a_;
  std::int32_t period_ = 0;
  std::map<std::pair<std::int32_t, std::int32_t>, VertexId> ids_;
};

/// Triangle lists of the small closed surfaces used for connected sums.
std::vector<Triangle> seven_vertex_torus();
std::vector<Triangle> six_vertex_projective_plane();

/// Compact model: a grid disk carrying `handles` handles, `crosscaps`
/// crosscaps and `holes` boundary circles, with the outer circle capped.
SurfaceComplex compact_model(std::int32_t handles, std::int32_t crosscaps, std::int32_t holes);

}  // namespace surfends
