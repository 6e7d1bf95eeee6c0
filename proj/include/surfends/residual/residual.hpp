#pragma once

// Residual domains of a compact subcomplex K, their frontiers, and the ends
// of each domain that are relatively compact in the ambient surface.
//
// Relatively compact ends are read off a regular neighbourhood of K: in the
// first barycentric subdivision S', K' is a full subcomplex and the triangles
// with one or two vertices in K' form a collar of K. Chaining those triangles
// through their edges with exactly one K' endpoint gives closed cycles, one
// per boundary circle of the neighbourhood, hence one per end. Only faces of S
// meeting K are visited.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "surfends/core/complex.hpp"
#include "surfends/core/region.hpp"
#include "surfends/core/subdivide.hpp"
#include "surfends/exhaustion/end_tree.hpp"
#include "surfends/exhaustion/stream.hpp"

namespace surfends {

/// Cells as listed in a file; closed on demand.
struct CellSet {
  std::vector<FaceId> faces;
  std::vector<Edge> edges;
  std::vector<VertexId> vertices;
};

/// Closure of a cell list; ids outside the complex raise Domain errors.
Subcomplex make_subcomplex(const SurfaceComplex& s, const CellSet& cells, std::int32_t* added = nullptr);

struct ResidualDomain {
  std::int32_t index = 0;
  Region region;
  /// Finite ambient: always true. Stream: no face beyond F_h.
  bool bounded = true;
  FrontierCells frontier;
};

/// Per-face domain index (kNone on K faces) and the domains in order of
/// their smallest face. `layers` and `horizon` are given for stream universes.
struct DomainLabels {
  std::vector<std::int32_t> face_domain;
  std::vector<ResidualDomain> domains;
};

DomainLabels residual_domains(const SurfaceComplex& s, const Subcomplex& k, const LayeredComplex* layers = nullptr,
                              std::int32_t horizon = 0);

/// S* and K*: a cone on every boundary circle of S, with the cones added to
/// K. Face and vertex ids of S are kept; cone apices and faces come after.
struct Augmented {
  SurfaceComplex complex;
  Subcomplex k;
  std::int32_t circles = 0;
};

Augmented augment(const SurfaceComplex& s, const Subcomplex& k);

/// True when some cell of K lies on the boundary of S.
bool meets_boundary(const SurfaceComplex& s, const Subcomplex& k);

struct RelativeEnd {
  std::int32_t index = 0;
  std::int32_t domain = kNone;
  /// Cells of K (in S) approached by the end.
  FrontierCells impression;
  /// The impression holds more than one point.
  bool regular = false;
  /// Faces of S carrying the end's collar triangles, sorted.
  std::vector<FaceId> collar_faces;
  /// The collar triangles of the first barycentric subdivision, each named
  /// by the cells of S carrying its corners (sorted), the list sorted.
  std::vector<std::array<Carrier, 3>> collar_triangles;
};

struct LocalEnds {
  /// K met the boundary, so the ends are those of S* - K*.
  bool augmented = false;
  std::vector<RelativeEnd> ends;
};

/// Relatively compact ends of S - K grouped by residual domain. When K meets
/// the boundary of S the computation runs in S* (see augment).
LocalEnds relatively_compact_ends(const SurfaceComplex& s, const Subcomplex& k,
                                  std::span<const std::int32_t> face_domain);

/// Ends of S - K near K, computed in the given complex without augmentation.
/// A component of the collar graph that runs into the boundary of the
/// complex is reported through `open_chains`.
LocalEnds collar_ends(const SurfaceComplex& s, const Subcomplex& k, std::span<const std::int32_t> face_domain,
                      std::int32_t* open_chains = nullptr);

struct FrontierPieces {
  std::vector<FrontierCells> pieces;
  /// For each end passed in, the piece containing its impression.
  std::vector<std::int32_t> end_piece;
};

/// Connected components of the frontier of U. Cells of `k` count as outside U.
FrontierPieces frontier_components(const SurfaceComplex& s, const Region& u, const Subcomplex* k = nullptr,
                                   std::span<const RelativeEnd> ends = {});

/// Full residual analysis of a finite ambient surface.
struct ResidualAnalysis {
  DomainLabels labels;
  LocalEnds ends;
  /// Frontier pieces per domain (in S*, when augmented).
  std::vector<FrontierPieces> frontier;
};

ResidualAnalysis analyze_residual(const SurfaceComplex& s, const Subcomplex& k);

/// Residual analysis inside a stream at horizon h.
struct StreamResidual {
  std::int32_t horizon = 0;
  std::shared_ptr<const LayeredComplex> universe;
  Subcomplex k;
  /// Smallest n with K inside F_n.
  std::int32_t k_depth = 0;
  DomainLabels labels;
  LocalEnds ends;
  std::vector<FrontierPieces> frontier;
  /// Ends of S (branches at horizon h) per domain.
  std::vector<std::vector<std::int32_t>> stream_ends;
  EndTree tree;
  EndsResult stream_end_list;
  std::vector<std::string> qualifiers;
};

StreamResidual analyze_residual(const ExhaustionStream& stream, const CellSet& k, std::int32_t horizon);

/// Injection of the ends of S into the ends of S - K: every end of S keeps
/// its branch beyond the depth where K is swallowed; S - K additionally has
/// the relatively compact ends around K.
struct EndEmbedding {
  std::int32_t k_depth = 0;
  /// Index i: the end of S - K receiving end i of S.
  std::vector<std::int32_t> image;
  /// Residual domain of every end of S - K (stream ends first, then the
  /// relatively compact ones).
  std::vector<std::int32_t> end_domain;
  std::int32_t stream_end_count = 0;
  std::int32_t relatively_compact_count = 0;
  bool injective = true;
};

EndEmbedding embed_ends_after_deletion(const ExhaustionStream& stream, const CellSet& k, std::int32_t horizon);
EndEmbedding embed_ends_after_deletion(const StreamResidual& r);

struct EndBound {
  std::int64_t count = 0;
  std::int64_t bound = 0;
  bool ok = true;
  bool augmented = false;
  std::int32_t m = 0;  // components of K
  std::int32_t n = 0;  // boundary circles added by the augmentation
  std::int64_t g = 0;  // genus of S (handles, or crosscaps)
};

/// End count of one residual domain of a compact connected surface against
/// m(g+1), or (m+n)(g+1) when K meets the boundary.
EndBound check_end_bound(const SurfaceComplex& s, const Subcomplex& k, std::int32_t domain);

struct C18Decision {
  bool is_residual = false;
  /// Frontier of U, the witness K when compact.
  FrontierCells witness;
  std::int32_t components = 0;
  std::string evidence;
  /// Stream only: frontier cells whose star reaches past F_h.
  FrontierCells beyond_horizon;
};

C18Decision c18_decide(const SurfaceComplex& s, const Region& u, const LayeredComplex* layers = nullptr,
                       std::int32_t horizon = 0);

}  // namespace surfends
