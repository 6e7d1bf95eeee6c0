#pragma once

// Classification signatures (orientability type, genus, compact boundary
// circles, end counts), homeomorphism decisions, model surfaces realizing a
// signature, and the double of a surface with boundary.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "surfends/core/complex.hpp"
#include "surfends/exhaustion/builders.hpp"
#include "surfends/exhaustion/stream.hpp"

namespace surfends {

enum class OrientabilityClass { Orientable, NonorientableOdd, NonorientableEven, InfinitelyNonorientable };

std::string to_string(OrientabilityClass c);
OrientabilityClass orientability_class_from(const std::string& name);

struct Signature {
  OrientabilityClass orientability = OrientabilityClass::Orientable;
  /// Handles when orientable, crosscaps otherwise; empty when infinite.
  std::optional<std::int64_t> genus;
  std::int64_t boundary_circles = 0;
  /// (|b|, |b'|, |b''|).
  EndTriple ends;
  /// Set for producers whose end space is declared rather than counted.
  std::optional<std::string> end_space;
  bool exact = true;
  std::int32_t horizon = 0;  // 0 for finite complexes
  std::vector<std::string> qualifiers;

  /// Same class, genus, boundary and end data (exactness is not compared).
  bool same_invariants(const Signature& other) const;
};

Signature signature(const SurfaceComplex& s);
Signature signature(const ExhaustionStream& stream, std::int32_t horizon);

/// Throws InvalidArgument when the signature cannot belong to a surface.
void check_consistent(const Signature& sig);

enum class Homeomorphic { Yes, No, Undecided };
std::string to_string(Homeomorphic h);

struct Comparison {
  Homeomorphic answer = Homeomorphic::Undecided;
  std::vector<std::string> reasons;
};

Comparison homeomorphic(const Signature& a, const Signature& b);

struct GeneratedModel {
  std::optional<SurfaceComplex> surface;
  std::optional<ExhaustionStream> stream;
  std::optional<ModelSpec> spec;
  std::string description;
};

GeneratedModel generate_model(const Signature& sig);

struct DoubleResult {
  SurfaceComplex complex;
  /// The input, barycentrically subdivided when an interior edge joined two
  /// boundary vertices.
  SurfaceComplex base;
  bool subdivided = false;
  /// Per vertex of the double: vertex of `base` and copy (0 or 1). Boundary
  /// vertices appear once, with copy 0 and shared set.
  std::vector<VertexId> origin;
  std::vector<std::int8_t> copy;
  std::vector<char> shared;
  /// Vertex of copy 1 for each vertex of `base`.
  std::vector<VertexId> mirror;
};

DoubleResult double_surface(const SurfaceComplex& s);

}  // namespace surfends
