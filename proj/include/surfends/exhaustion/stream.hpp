#pragma once

// Lazy presentations of non-compact surfaces as nested compact complexes
// F_1 c F_2 c ... . A stream materializes F_1..F_d as one LayeredComplex whose
// face and vertex ids are prefix-stable: F_n occupies the same ids at every
// materialization depth >= n, so the inclusion maps are identities on ids.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "surfends/core/assembler.hpp"
#include "surfends/core/complex.hpp"

namespace surfends {

/// End counts (|b|, |b'|, |b''|): all ends, non-planar ends, non-orientable ends.
struct EndTriple {
  std::int64_t ends = 0;
  std::int64_t nonplanar = 0;
  std::int64_t nonorientable = 0;
  friend bool operator==(const EndTriple&, const EndTriple&) = default;
};

struct StreamInfo {
  std::string kind = "builder";  // "builder" or "chunks"
  std::string name;
  std::map<std::string, std::int64_t> params;
  /// Exact end count promised by the producer, when known.
  std::optional<std::int64_t> declared_ends;
  /// Declared end triple for builders whose end space is not finitely
  /// enumerable (Cantor-type); never computed from the stream.
  std::optional<std::string> declared_end_space;
  /// Finite genus, finitely many ends: leaf counts stabilize exactly.
  bool finite_type = false;
  /// False when the surface has non-compact boundary (half-plane).
  bool compact_boundary = true;
  /// Largest depth the producer can materialize.
  std::int32_t max_depth = 1 << 20;
};

/// A simplicial map of the materialized complex onto itself that carries F_n
/// into F_{n+shift}. Only builders declare these.
struct DeclaredSymmetry {
  std::string name;
  std::int32_t order = 1;
  std::int32_t shift = 0;
  std::vector<VertexId> vertex_map;
};

class ExhaustionStream {
 public:
  using Producer = std::function<LayeredComplex(std::int32_t depth)>;
  using SymmetryProducer = std::function<std::vector<DeclaredSymmetry>(std::int32_t depth)>;

  ExhaustionStream(StreamInfo info, Producer producer, SymmetryProducer symmetries = {});

  const StreamInfo& info() const { return info_; }

  /// F_1..F_depth as one layered complex. Cached; safe for concurrent calls.
  /// Producer failures are rethrown as errors naming the depth.
  std::shared_ptr<const LayeredComplex> materialize(std::int32_t depth) const;

  std::vector<DeclaredSymmetry> symmetries(std::int32_t depth) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::int32_t, std::shared_ptr<const LayeredComplex>> entries;
  };

  StreamInfo info_;
  Producer producer_;
  SymmetryProducer symmetries_;
  // Shared by copies; the producer is deterministic so sharing is safe.
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

/// Faces with layer <= depth of an already layer-sorted complex; ids unchanged.
LayeredComplex truncate(const LayeredComplex& lc, std::int32_t depth);

/// A stream over a fixed layered complex (for example loaded from chunk files).
ExhaustionStream fixed_stream(StreamInfo info, LayeredComplex universe);

/// The stream (F_k, F_2k, F_3k, ...).
ExhaustionStream subsample(const ExhaustionStream& s, std::int32_t k);

/// Boundary cycles of F_n split into those lying on the ambient boundary and
/// those facing the rest of the surface.
struct DepthBoundary {
  std::vector<BoundaryCycle> frontier;  // cycles in ambient vertex ids
  std::vector<BoundaryCycle> ambient;
  std::vector<BoundaryCycle> mixed;     // partly on the ambient boundary
};

/// Boundary of F_n inside a universe materialized past n. An edge of F_n is
/// an ambient-boundary edge when its only universe face has layer < universe
/// depth (its star is fully known).
DepthBoundary depth_boundary(const LayeredComplex& universe, std::int32_t n);

/// Edge-connected components of the faces with layer > n; labels per face,
/// kNone for faces of F_n. Returns the component count.
std::int32_t complement_components(const LayeredComplex& universe, std::int32_t n,
                                   std::vector<std::int32_t>& labels);

ValidationReport validate_exhaustion(const ExhaustionStream& stream, std::int32_t depth);

}  // namespace surfends
