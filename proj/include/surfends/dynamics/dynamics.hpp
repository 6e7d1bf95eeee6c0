#pragma once

// Maps induced by a K-preserving simplicial automorphism on the residual
// domains of K and on the relatively compact ends of S - K. Face count plays
// the role of the invariant area measure.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "surfends/classify/classify.hpp"
#include "surfends/core/complex.hpp"
#include "surfends/exhaustion/stream.hpp"
#include "surfends/residual/residual.hpp"

namespace surfends {

struct SimplicialAutomorphism {
  std::string name;
  std::vector<VertexId> vertex_map;  // kNone where a partial map is undefined
  std::vector<FaceId> face_map;      // kNone outside the domain
  bool partial = false;

  bool defined_on(FaceId f) const { return face_map[f] != kNone; }
  /// Image of a cell of S named by a carrier; kNone when undefined.
  Carrier apply(const SurfaceComplex& s, Carrier c) const;
};

/// Checks that the vertex map sends faces to faces bijectively. With
/// `domain`, the map is only defined on those faces (a sub-complex that must
/// contain the closed star of K when used below).
SimplicialAutomorphism make_automorphism(const SurfaceComplex& s, std::vector<VertexId> vertex_map,
                                         const std::optional<std::vector<FaceId>>& domain = std::nullopt,
                                         std::string name = {});

SimplicialAutomorphism identity_automorphism(const SurfaceComplex& s);

/// f after g. Defined where g is and f is defined on the image.
SimplicialAutomorphism compose(const SurfaceComplex& s, const SimplicialAutomorphism& f,
                               const SimplicialAutomorphism& g);

SimplicialAutomorphism power(const SurfaceComplex& s, const SimplicialAutomorphism& f, std::int32_t n);

struct InvarianceCertificate {
  bool ok = true;
  std::string detail;
};

/// f(K) = K, and the closed star of K lies in the domain of f.
InvarianceCertificate check_invariance(const SurfaceComplex& s, const SimplicialAutomorphism& f, const Subcomplex& k);

struct DomainPermutation {
  std::vector<std::int32_t> image;  // kNone when the domain leaves the map's domain
  std::vector<std::int64_t> face_counts;
  bool measure_preserved = true;
  bool bounded_preserved = true;
};

struct EndPermutation {
  std::vector<RelativeEnd> ends;
  std::vector<std::int32_t> image;  // kNone for ends excluded from the map's domain
  std::vector<std::int32_t> excluded;
  bool injective = true;
  bool well_defined = true;  // every collar triangle of an end lands in one end
  bool natural = true;       // Z(f*(b)) = f(Z(b))
  bool commutes_with_domains = true;
};

struct P51Report {
  bool all_periodic = true;
  std::vector<std::vector<std::int32_t>> orbits;
  std::vector<std::int32_t> orbit_lengths;
  std::int64_t period = 1;  // lcm of orbit lengths
};

/// Everything about one automorphism and one K.
struct EndDynamics {
  InvarianceCertificate certificate;
  DomainLabels labels;
  DomainPermutation domains;
  EndPermutation ends;
  P51Report p51;
  std::vector<std::string> qualifiers;
};

/// Throws Domain when f(K) != K.
DomainPermutation induced_domain_map(const SurfaceComplex& s, const SimplicialAutomorphism& f, const Subcomplex& k,
                                     const LayeredComplex* layers = nullptr, std::int32_t horizon = 0);
EndPermutation induced_end_map(const SurfaceComplex& s, const SimplicialAutomorphism& f, const Subcomplex& k);
P51Report orbit_table(std::span<const std::int32_t> perm);
EndDynamics verify_p51(const SurfaceComplex& s, const SimplicialAutomorphism& f, const Subcomplex& k);

/// Builder-declared symmetry of a stream acting on F_{h+1}.
EndDynamics verify_p51(const ExhaustionStream& stream, const std::string& symmetry, const CellSet& k,
                       std::int32_t horizon);

/// The automorphism of the double acting as f on both copies; f is lifted to
/// the subdivision first when the double needed one. Total maps only.
SimplicialAutomorphism double_map(const SurfaceComplex& s, const DoubleResult& d, const SimplicialAutomorphism& f);

}  // namespace surfends
