#pragma once

// Ends of a stream as branches of the tree of complement components.
// At horizon h the tree is read off F_{h+1}: a node at depth n is an
// edge-connected component of F_{h+1} - F_n, the root is the whole of
// F_{h+1}, and the leaves sit at depth h.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "surfends/exhaustion/stream.hpp"

namespace surfends {

struct EndTreeNode {
  std::int32_t depth = 0;
  std::int32_t parent = kNone;
  std::vector<std::int32_t> children;
  std::vector<FaceId> faces;  // sorted, ids of the universe
  /// Of the closure of the node inside F_{h+1}.
  std::int64_t euler_genus = 0;
  bool orientable = true;
  /// Index into the non-ambient boundary cycles of F_depth; kNone when the
  /// node meets no cycle or several (an exhaustion defect).
  std::int32_t attaching_cycle = kNone;
};

struct EndTree {
  std::int32_t horizon = 0;
  std::shared_ptr<const LayeredComplex> universe;  // F_{h+1}
  std::vector<EndTreeNode> nodes;                  // node 0 is the root
  /// by_depth[n] lists node ids at depth n (0..h).
  std::vector<std::vector<std::int32_t>> by_depth;
  /// Boundary cycles of F_n for n = 1..h (index n), counting every cycle.
  std::vector<std::int32_t> boundary_cycles;

  std::int32_t leaf_count(std::int32_t n) const { return static_cast<std::int32_t>(by_depth[n].size()); }
  /// Node at depth n containing the face, or kNone.
  std::int32_t node_of(std::int32_t n, FaceId f) const { return face_node[n][f]; }

  /// face_node[n][f]: node id at depth n containing face f, or kNone.
  std::vector<std::vector<std::int32_t>> face_node;
};

EndTree end_tree(const ExhaustionStream& stream, std::int32_t horizon);

struct End {
  std::int32_t index = 0;
  /// Node id per depth: path[n] for n = 0..h (path[0] is the root).
  std::vector<std::int32_t> path;
  bool planar = true;
  bool orientable = true;
  /// First depth from which every node of the branch carries genus
  /// (resp. non-orientability); kNone when the deepest node does not.
  std::int32_t first_nonplanar_depth = kNone;
  std::int32_t first_nonorientable_depth = kNone;
};

struct EndsResult {
  std::int32_t horizon = 0;
  std::vector<End> ends;
  std::vector<std::int32_t> leaf_counts;  // index n = 1..h (index 0 unused, 1)
  bool stabilized = false;
  /// Stabilized and the stream is declared finite-type.
  bool exact = false;
  std::vector<std::string> qualifiers;
};

EndsResult ends_of(const EndTree& tree, const StreamInfo& info);
EndsResult ends(const ExhaustionStream& stream, std::int32_t horizon);

enum class EndKind { Planar, Nonplanar, Nonorientable };

struct PlanarityReport {
  EndKind kind = EndKind::Planar;
  std::int32_t first_nonplanar_depth = kNone;
  std::int32_t first_nonorientable_depth = kNone;
  std::string qualifier;
};

PlanarityReport end_is_planar(const EndsResult& ends, std::int32_t end_index);

/// The end eventually containing an escaping face path (ids of the universe).
std::int32_t classify_ray(const EndTree& tree, const EndsResult& ends, std::span<const FaceId> ray);

/// End triple (b, b', b'') read from the ends at horizon.
EndTriple end_triple(const EndsResult& ends);

}  // namespace surfends
