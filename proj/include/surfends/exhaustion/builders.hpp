#pragma once

// Named stream builders. Every builder is deterministic and prefix-stable.

#include <map>
#include <string>
#include <vector>

#include "surfends/exhaustion/stream.hpp"

namespace surfends {

/// Square grid; F_n is the 2n x 2n block of cells around the origin. One end.
ExhaustionStream plane_grid_stream();
/// Upper half of the plane grid. Its boundary line is not compact.
ExhaustionStream half_plane_stream();
/// Bi-infinite cylinder of the given circumference (>= 3); F_n has 2n rows.
ExhaustionStream cylinder_stream(std::int32_t circumference = 6);
/// Plane grid with a hole opened in every ring, each hole continued by a
/// half-infinite tube: ring n contributes one new end.
ExhaustionStream flute_stream();
/// Cylinder with one handle per layer on each side: two non-planar ends.
ExhaustionStream jacobs_ladder_stream();
/// Plane grid with one crosscap per ring: one non-orientable end.
ExhaustionStream infinite_crosscap_stream();
/// Sphere minus a Cantor set: pairs of pants glued along a binary tree; the
/// complement of F_n has 2^n components.
ExhaustionStream binary_tree_stream();

/// Finite-type model with accumulating decorations: a sphere with handles,
/// crosscaps and boundary circles, plus `ends` tubes; the first
/// `handle_ends` tubes carry one handle per layer, the next `crosscap_ends`
/// one crosscap per layer.
struct ModelSpec {
  std::int32_t handles = 0;
  std::int32_t crosscaps = 0;
  std::int32_t boundary = 0;
  std::int32_t ends = 1;
  std::int32_t handle_ends = 0;
  std::int32_t crosscap_ends = 0;
};
ExhaustionStream model_stream(const ModelSpec& spec);

std::vector<std::string> builder_names();
/// Dispatch by name; unknown names or parameters raise InvalidArgument.
ExhaustionStream make_builder(const std::string& name, const std::map<std::string, std::int64_t>& params);

}  // namespace surfends
