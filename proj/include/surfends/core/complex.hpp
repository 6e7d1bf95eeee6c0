#pragma once

// Finite triangulated surfaces (possibly with boundary) and their basic
// invariants. Cells are abstract simplices: a vertex is an index, an edge is
// an unordered vertex pair, a face is a vertex triple. A SurfaceComplex is
// immutable after construction and every query is a pure read.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace surfends {

using VertexId = std::int32_t;
using EdgeId = std::int32_t;
using FaceId = std::int32_t;

inline constexpr std::int32_t kNone = -1;

using Triangle = std::array<VertexId, 3>;

/// Unordered vertex pair, stored with first < second.
struct Edge {
  VertexId first = 0;
  VertexId second = 0;

  static Edge of(VertexId a, VertexId b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Error raised by library operations. `Kind` drives the C API error codes
/// and the CLI exit status.
class Error : public std::runtime_error {
 public:
  enum class Kind { Domain, Io, Parse, InvalidArgument };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

[[noreturn]] void throw_domain(const std::string& what);

class SurfaceComplex {
 public:
  SurfaceComplex() = default;

  /// Builds the edge and incidence tables. Throws InvalidArgument when a face
  /// references a vertex outside [0, vertex_count). Degenerate faces (repeated
  /// vertex) are kept but contribute no edges; validate_surface reports them.
  SurfaceComplex(std::int32_t vertex_count, std::vector<Triangle> faces);

  std::int32_t vertex_count() const noexcept { return vertex_count_; }
  std::int32_t face_count() const noexcept { return static_cast<std::int32_t>(faces_.size()); }
  std::int32_t edge_count() const noexcept { return static_cast<std::int32_t>(edges_.size()); }

  const Triangle& face(FaceId f) const { return faces_[f]; }
  std::span<const Triangle> faces() const noexcept { return faces_; }
  Edge edge(EdgeId e) const { return edges_[e]; }
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// Edges of face f in the order (v0v1, v1v2, v2v0); kNone for degenerate sides.
  const std::array<EdgeId, 3>& face_edges(FaceId f) const { return face_edges_[f]; }

  std::span<const FaceId> edge_faces(EdgeId e) const {
    return {edge_face_list_.data() + edge_face_offset_[e],
            edge_face_list_.data() + edge_face_offset_[e + 1]};
  }
  std::span<const FaceId> vertex_faces(VertexId v) const {
    return {vertex_face_list_.data() + vertex_face_offset_[v],
            vertex_face_list_.data() + vertex_face_offset_[v + 1]};
  }
  /// Edge ids incident to v, sorted by the opposite endpoint.
  std::span<const EdgeId> vertex_edges(VertexId v) const {
    return {vertex_edge_list_.data() + vertex_edge_offset_[v],
            vertex_edge_list_.data() + vertex_edge_offset_[v + 1]};
  }

  std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;
  bool is_boundary_edge(EdgeId e) const { return edge_faces(e).size() == 1; }
  bool is_degenerate(FaceId f) const;

  /// The other face across edge e, or kNone.
  FaceId across(EdgeId e, FaceId f) const;

 private:
  std::int32_t vertex_count_ = 0;
  std::vector<Triangle> faces_;
  std::vector<Edge> edges_;
  std::vector<std::array<EdgeId, 3>> face_edges_;
  std::vector<std::int32_t> edge_face_offset_{0};
  std::vector<FaceId> edge_face_list_;
  std::vector<std::int32_t> vertex_face_offset_;
  std::vector<FaceId> vertex_face_list_;
  std::vector<std::int32_t> vertex_edge_offset_;
  std::vector<EdgeId> vertex_edge_list_;
};

// ---------------------------------------------------------------------------
// Subcomplexes and regions

/// Closed subcomplex: listed faces bring their edges, edges their endpoints.
/// Stored as sorted id lists plus membership masks for O(1) lookup.
class Subcomplex {
 public:
  Subcomplex() = default;

  /// Builds the closure of the given cells. `added` (optional) receives the
  /// number of cells that were not listed but are implied by closure.
  static Subcomplex closure_of(const SurfaceComplex& s, std::span<const FaceId> faces,
                               std::span<const Edge> edges, std::span<const VertexId> vertices,
                               std::int32_t* added = nullptr);
  static Subcomplex empty(const SurfaceComplex& s);

  bool has_vertex(VertexId v) const { return vertex_mask_[v] != 0; }
  bool has_edge(EdgeId e) const { return edge_mask_[e] != 0; }
  bool has_face(FaceId f) const { return face_mask_[f] != 0; }

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<EdgeId>& edges() const { return edges_; }
  const std::vector<FaceId>& faces() const { return faces_; }
  bool is_empty() const { return vertices_.empty(); }

  /// Number of connected components (cells joined through shared vertices).
  std::int32_t component_count(const SurfaceComplex& s) const;
  /// Vertex lists of the connected components, sorted by smallest vertex.
  std::vector<std::vector<VertexId>> components(const SurfaceComplex& s) const;

 private:
  std::vector<char> vertex_mask_, edge_mask_, face_mask_;
  std::vector<VertexId> vertices_;
  std::vector<EdgeId> edges_;
  std::vector<FaceId> faces_;
};

/// A set of faces read as an open set: the open faces, the open edges all of
/// whose incident faces are listed, and the vertices whose whole star is
/// listed. Face ids are kept sorted.
struct Region {
  std::vector<FaceId> faces;
  friend bool operator==(const Region&, const Region&) = default;
};

// ---------------------------------------------------------------------------
// Validation

struct ValidationIssue {
  std::string code;
  std::string message;
  std::vector<std::int32_t> cells;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  std::vector<std::string> notes;
  bool valid() const { return issues.empty(); }
};

ValidationReport validate_surface(const SurfaceComplex& s);

// ---------------------------------------------------------------------------
// Invariants

/// Labels faces by connected component, joining faces across shared edges
/// that are not blocked. Faces with mask 0 get kNone. Components are numbered
/// in order of their smallest face id. Returns the component count.
std::int32_t label_face_components(const SurfaceComplex& s, std::span<const char> face_mask,
                                   std::span<const char> edge_blocked,
                                   std::vector<std::int32_t>& labels);

std::vector<Region> connected_components(const SurfaceComplex& s);

std::int64_t euler_characteristic(const SurfaceComplex& s);

struct BoundaryCycle {
  std::vector<VertexId> vertices;  // closed walk, first vertex not repeated
  std::vector<EdgeId> edges;       // edges[i] joins vertices[i] and vertices[i+1]
  FaceId min_face = kNone;
};

/// Closed walks of boundary edges; edge-disjoint and covering every boundary
/// edge. A boundary vertex met twice (pinch) is split by following the face
/// fan, so cycles stay simple walks on valid surfaces.
std::vector<BoundaryCycle> boundary_components(const SurfaceComplex& s);

struct OrientationResult {
  bool orientable = true;
  EdgeId conflict_edge = kNone;
  /// +1 keeps the stored vertex order, -1 reverses it.
  std::vector<std::int8_t> face_sign;
};

/// Orientation propagation over faces in `face_mask` (all faces when empty),
/// crossing only unblocked edges.
OrientationResult orient(const SurfaceComplex& s, std::span<const char> face_mask = {},
                         std::span<const char> edge_blocked = {});

enum class Orientability { Orientable, Nonorientable };

/// Orientability per connected component, in component order.
std::vector<Orientability> orientability(const SurfaceComplex& s);

/// Genus tagged by orientability: handle count g for orientable surfaces
/// (chi = 2 - 2g - b) and crosscap count k otherwise (chi = 2 - k - b).
struct Genus {
  Orientability orientability = Orientability::Orientable;
  std::int64_t value = 0;
  friend bool operator==(const Genus&, const Genus&) = default;

  /// 2g for orientable surfaces, k otherwise.
  std::int64_t euler_genus() const {
    return orientability == Orientability::Orientable ? 2 * value : value;
  }
};

/// Throws Domain when the complex is empty or disconnected.
Genus genus(const SurfaceComplex& s);

/// Genus from raw counts.
Genus genus_from_counts(std::int64_t chi, std::int64_t boundary_cycles, bool orientable);

/// Applies a vertex relabeling (perm[old] = new).
SurfaceComplex relabel(const SurfaceComplex& s, std::span<const VertexId> perm);

/// Disjoint union; vertices of b are shifted by a.vertex_count().
SurfaceComplex disjoint_union(const SurfaceComplex& a, const SurfaceComplex& b);

}  // namespace surfends
