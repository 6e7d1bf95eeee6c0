#pragma once

// Canonical exhaustion of a residual domain U of K.
//
// The ambient is subdivided barycentrically twice so that the faces of U
// meeting K form a thin collar. F_0 is the first stream element F_n0 that
// holds K and every bounded domain in its interior and for which U_- is
// connected and every component of U_+ meets exactly one cycle of xi. E_1 is
// U_- without the collar; each later round cuts the collar at the midpoints
// of its edges with one endpoint on K and moves the outer ring into E.
// G_n = E_n together with the faces of U_+ of layer at most n0 + n.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "surfends/core/complex.hpp"
#include "surfends/core/region.hpp"
#include "surfends/residual/residual.hpp"

namespace surfends {

struct CanonicalCheck {
  std::string name;
  bool ok = true;
  std::string detail;
};

/// One component of the innermost collar: a half-open annulus around part of
/// K, the neighbourhood of one relatively compact end.
struct CollarEnd {
  std::vector<FaceId> faces;
  FrontierCells impression;  // cells of the ambient
  bool regular = false;
  std::int32_t free_cycles = 0;  // boundary cycles of its closure avoiding K
  bool orientable = true;
  std::int64_t open_euler = 0;
};

struct CanonicalExhaustion {
  static constexpr std::int32_t kCollar = std::numeric_limits<std::int32_t>::max();

  bool finite = false;
  std::int32_t horizon = 0;
  std::int32_t n0 = 0;
  std::int32_t rounds = 0;  // G_1 .. G_rounds are available
  std::int32_t domain = 0;
  std::int64_t f0_faces = 0;  // faces of F_0 in the ambient

  /// Second barycentric subdivision with the collar of U refined.
  SurfaceComplex complex;
  Subcomplex k;
  std::vector<FaceId> face_parent;  // face of the ambient
  std::vector<std::int32_t> face_layer;
  /// Round in which a face of U_- entered E; 0 on U_+, kNone outside U and
  /// kCollar on the collar left after the last round.
  std::vector<std::int32_t> e_index;

  std::vector<FaceId> u_minus, u_plus;
  std::vector<std::vector<EdgeId>> xi;
  std::vector<std::int32_t> xi_component;  // U_+ component holding each cycle
  std::int32_t u_plus_components = 0;
  /// Branches of U_+ at the horizon (ends of U at infinity).
  std::int32_t stream_leaves = 0;
  std::vector<CollarEnd> collar_ends;

  std::vector<CanonicalCheck> checks;
  std::vector<std::string> qualifiers;

  std::vector<char> g_mask(std::int32_t n) const;
  bool ok() const;
};

CanonicalExhaustion canonical_exhaustion(const ExhaustionStream& stream, const CellSet& k, std::int32_t domain,
                                         std::int32_t horizon);

/// Compact ambient: F_0 is the whole surface and U_+ is empty.
CanonicalExhaustion canonical_exhaustion(const SurfaceComplex& s, const Subcomplex& k, std::int32_t domain,
                                         std::int32_t rounds);

}  // namespace surfends
