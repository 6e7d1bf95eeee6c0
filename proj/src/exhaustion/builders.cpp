#include "surfends/exhaustion/builders.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <set>

namespace surfends {

namespace {

std::int32_t plane_ring(std::int32_t x, std::int32_t y) {
  return std::max({std::abs(x), std::abs(x + 1), std::abs(y), std::abs(y + 1)});
}

// Cell of ring r opened (flute) or crosscapped (infinite crosscap); the side
// rotates with r so consecutive choices stay apart.
std::pair<std::int32_t, std::int32_t> side_cell(std::int32_t r) {
  switch (r % 4) {
    case 0: return {0, r - 1};
    case 1: return {r - 1, 0};
    case 2: return {0, -r};
    default: return {-r, 0};
  }
}

template <typename Fn>
void for_ring_cells(std::int32_t r, Fn&& fn) {
  for (std::int32_t y = -r; y < r; ++y)
    for (std::int32_t x = -r; x < r; ++x)
      if (plane_ring(x, y) == r) fn(x, y);
}

// Outer boundary walk of the w x h block of cells with lower-left corner (x0, y0).
std::vector<VertexId> block_outline(LatticePatch& p, std::int32_t x0, std::int32_t y0, std::int32_t w,
                                    std::int32_t h) {
  std::vector<VertexId> out;
  for (std::int32_t x = 0; x < w; ++x) out.push_back(p.at(x0 + x, y0));
  for (std::int32_t y = 0; y < h; ++y) out.push_back(p.at(x0 + w, y0 + y));
  for (std::int32_t x = w; x > 0; --x) out.push_back(p.at(x0 + x, y0 + h));
  for (std::int32_t y = h; y > 0; --y) out.push_back(p.at(x0, y0 + y));
  return out;
}

// Half-infinite tube on a cycle: rings get layers first_layer, first_layer+1, ...
// up to `depth`. `decorate` is called with the first face of every ring.
void add_tube(Assembler& a, std::vector<VertexId> cycle, std::int32_t first_layer, std::int32_t depth,
              const std::function<void(std::size_t, std::int32_t)>& decorate = {}) {
  for (std::int32_t layer = first_layer; layer <= depth; ++layer) {
    auto next = a.add_cycle(static_cast<std::int32_t>(cycle.size()));
    auto faces = a.band(cycle, next, layer);
    if (decorate) decorate(faces.front(), layer);
    cycle = std::move(next);
  }
}

struct Built {
  LayeredComplex complex;
  std::vector<DeclaredSymmetry> symmetries;
};

// Vertex map of a lattice symmetry, in final ids.
DeclaredSymmetry lattice_symmetry(const std::string& name, std::int32_t order, const LatticePatch& p,
                                  const std::vector<VertexId>& renumber, std::int32_t vertex_count,
                                  const std::vector<std::pair<std::int32_t, std::int32_t>>& points,
                                  const std::function<std::pair<std::int32_t, std::int32_t>(std::int32_t, std::int32_t)>& g) {
  DeclaredSymmetry sym{name, order, 0, std::vector<VertexId>(vertex_count, kNone)};
  for (auto [x, y] : points) {
    VertexId from = p.find(x, y);
    auto [gx, gy] = g(x, y);
    VertexId to = p.find(gx, gy);
    if (from == kNone || to == kNone || renumber[from] == kNone || renumber[to] == kNone)
      throw_domain("declared symmetry " + name + " leaves the materialized lattice");
    sym.vertex_map[renumber[from]] = renumber[to];
  }
  return sym;
}

Built build_plane(std::int32_t depth, bool flute, bool crosscaps) {
  Assembler a;
  LatticePatch p(a);
  std::vector<std::pair<std::int32_t, std::int32_t>> points;
  for (std::int32_t r = 1; r <= depth; ++r) {
    auto special = side_cell(r);
    for_ring_cells(r, [&](std::int32_t x, std::int32_t y) {
      if (flute && std::pair{x, y} == special) return;
      auto cell = p.add_cell(x, y, r);
      if (crosscaps && std::pair{x, y} == special) a.attach_crosscap(cell.first, r);
    });
    if (flute) add_tube(a, p.cell_cycle(special.first, special.second), r, depth);
  }
  std::vector<VertexId> renumber;
  Built out{a.finish(depth, &renumber), {}};
  p.record_coords(out.complex, renumber);
  if (!flute && !crosscaps) {
    for (std::int32_t y = -depth; y <= depth; ++y)
      for (std::int32_t x = -depth; x <= depth; ++x) points.emplace_back(x, y);
    out.symmetries.push_back(lattice_symmetry("half-turn", 2, p, renumber, out.complex.complex.vertex_count(), points,
                                              [](std::int32_t x, std::int32_t y) { return std::pair{-x, -y}; }));
  }
  return out;
}

Built build_half_plane(std::int32_t depth) {
  Assembler a;
  LatticePatch p(a);
  for (std::int32_t r = 1; r <= depth; ++r)
    for (std::int32_t y = 0; y < r; ++y)
      for (std::int32_t x = -r; x < r; ++x)
        if (std::max({std::abs(x), std::abs(x + 1), y + 1}) == r) p.add_cell(x, y, r);
  std::vector<VertexId> renumber;
  Built out{a.finish(depth, &renumber), {}};
  p.record_coords(out.complex, renumber);
  return out;
}

Built build_cylinder(std::int32_t depth, std::int32_t c, bool handles) {
  Assembler a;
  LatticePatch p(a, c);
  for (std::int32_t layer = 1; layer <= depth; ++layer) {
    for (std::int32_t row : {layer - 1, -layer}) {
      for (std::int32_t i = 0; i < c; ++i) {
        auto cell = p.add_cell(i, row, layer);
        if (handles && i == 0) a.attach_handle(cell.first, layer);
      }
    }
  }
  std::vector<VertexId> renumber;
  Built out{a.finish(depth, &renumber), {}};
  p.record_coords(out.complex, renumber);
  if (!handles) {
    std::vector<std::pair<std::int32_t, std::int32_t>> points;
    for (std::int32_t j = -depth; j <= depth; ++j)
      for (std::int32_t i = 0; i < c; ++i) points.emplace_back(i, j);
    auto n = out.complex.complex.vertex_count();
    out.symmetries.push_back(lattice_symmetry("rotation", c, p, renumber, n, points,
                                              [](std::int32_t x, std::int32_t y) { return std::pair{x + 1, y}; }));
    out.symmetries.push_back(lattice_symmetry("half-turn", 2, p, renumber, n, points,
                                              [](std::int32_t x, std::int32_t y) { return std::pair{-x, -y}; }));
  }
  return out;
}

Built build_binary_tree(std::int32_t depth) {
  Assembler a;
  // Every piece is a 5 x 3 block of cells with cells (1,1) and (3,1) open.
  auto piece = [&](std::int32_t layer, std::vector<std::vector<VertexId>>& holes) {
    LatticePatch p(a);
    for (std::int32_t y = 0; y < 3; ++y)
      for (std::int32_t x = 0; x < 5; ++x)
        if (!(y == 1 && (x == 1 || x == 3))) p.add_cell(x, y, layer);
    holes.push_back(p.cell_cycle(1, 1));
    holes.push_back(p.cell_cycle(3, 1));
    return block_outline(p, 0, 0, 5, 3);
  };
  std::vector<std::vector<VertexId>> open;
  a.cone(piece(1, open), 1);
  for (std::int32_t layer = 2; layer <= depth; ++layer) {
    std::vector<std::vector<VertexId>> next;
    for (const auto& hole : open) {
      auto outline = piece(layer, next);
      a.band(hole, outline, layer);
    }
    open = std::move(next);
  }
  return {a.finish(depth), {}};
}

Built build_model(std::int32_t depth, const ModelSpec& m) {
  Assembler a;
  LatticePatch p(a);
  const std::int32_t features = std::max(1, m.handles + m.crosscaps + m.boundary + std::max(0, m.ends - 1));
  const std::int32_t width = 2 * features + 1;
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::int32_t y = 0; y < 3; ++y)
    for (std::int32_t x = 0; x < width; ++x) cells.push_back(p.add_cell(x, y, 1));
  std::int32_t slot = 0;
  auto next_slot = [&] { return 2 * slot++ + 1; };
  for (std::int32_t i = 0; i < m.handles; ++i) a.attach_handle(cells[width + next_slot()].first, 1);
  for (std::int32_t i = 0; i < m.crosscaps; ++i) a.attach_crosscap(cells[width + next_slot()].first, 1);
  auto open_cell = [&](std::int32_t x) {
    a.remove_face(cells[width + x].first);
    a.remove_face(cells[width + x].second);
    return p.cell_cycle(x, 1);
  };
  for (std::int32_t i = 0; i < m.boundary; ++i) open_cell(next_slot());
  std::vector<std::vector<VertexId>> tubes;
  if (m.ends >= 1) tubes.push_back(block_outline(p, 0, 0, width, 3));
  for (std::int32_t e = 1; e < m.ends; ++e) tubes.push_back(open_cell(next_slot()));
  for (std::size_t e = 0; e < tubes.size(); ++e) {
    std::function<void(std::size_t, std::int32_t)> decorate;
    if (static_cast<std::int32_t>(e) < m.handle_ends)
      decorate = [&](std::size_t f, std::int32_t layer) { a.attach_handle(f, layer); };
    else if (static_cast<std::int32_t>(e) < m.handle_ends + m.crosscap_ends)
      decorate = [&](std::size_t f, std::int32_t layer) { a.attach_crosscap(f, layer); };
    add_tube(a, tubes[e], 2, depth, decorate);
  }
  if (m.ends == 0) a.cone(block_outline(p, 0, 0, width, 3), 1);
  return {a.finish(depth), {}};
}

ExhaustionStream from_builder(StreamInfo info, std::function<Built(std::int32_t)> build) {
  auto producer = [build](std::int32_t depth) { return build(depth).complex; };
  auto symmetries = [build](std::int32_t depth) { return build(depth).symmetries; };
  return ExhaustionStream(std::move(info), producer, symmetries);
}

StreamInfo named(const std::string& name) {
  StreamInfo info;
  info.kind = "builder";
  info.name = name;
  return info;
}

}  // namespace

ExhaustionStream plane_grid_stream() {
  auto info = named("plane-grid");
  info.declared_ends = 1;
  info.finite_type = true;
  return from_builder(info, [](std::int32_t d) { return build_plane(d, false, false); });
}

ExhaustionStream half_plane_stream() {
  auto info = named("half-plane");
  info.declared_ends = 1;
  info.compact_boundary = false;
  return from_builder(info, [](std::int32_t d) { return build_half_plane(d); });
}

ExhaustionStream cylinder_stream(std::int32_t circumference) {
  if (circumference < 3) throw Error(Error::Kind::InvalidArgument, "cylinder circumference must be at least 3");
  auto info = named("cylinder");
  info.params["circumference"] = circumference;
  info.declared_ends = 2;
  info.finite_type = true;
  return from_builder(info, [circumference](std::int32_t d) { return build_cylinder(d, circumference, false); });
}

ExhaustionStream flute_stream() {
  return from_builder(named("flute"), [](std::int32_t d) { return build_plane(d, true, false); });
}

ExhaustionStream jacobs_ladder_stream() {
  auto info = named("jacobs-ladder");
  info.declared_ends = 2;
  return from_builder(info, [](std::int32_t d) { return build_cylinder(d, 6, true); });
}

ExhaustionStream infinite_crosscap_stream() {
  auto info = named("infinite-crosscap");
  info.declared_ends = 1;
  return from_builder(info, [](std::int32_t d) { return build_plane(d, false, true); });
}

ExhaustionStream binary_tree_stream() {
  auto info = named("binary-tree");
  info.declared_end_space = "cantor set, all ends planar";
  return from_builder(info, [](std::int32_t d) { return build_binary_tree(d); });
}

ExhaustionStream model_stream(const ModelSpec& spec) {
  if (spec.handles < 0 || spec.crosscaps < 0 || spec.boundary < 0 || spec.ends < 1 || spec.handle_ends < 0 ||
      spec.crosscap_ends < 0 || spec.handle_ends + spec.crosscap_ends > spec.ends)
    throw Error(Error::Kind::InvalidArgument, "inconsistent model parameters");
  auto info = named("model");
  info.params = {{"handles", spec.handles},         {"crosscaps", spec.crosscaps},
                 {"boundary", spec.boundary},       {"ends", spec.ends},
                 {"handle_ends", spec.handle_ends}, {"crosscap_ends", spec.crosscap_ends}};
  info.declared_ends = spec.ends;
  info.finite_type = spec.handle_ends == 0 && spec.crosscap_ends == 0;
  return from_builder(info, [spec](std::int32_t d) { return build_model(d, spec); });
}

std::vector<std::string> builder_names() {
  return {"binary-tree", "cylinder", "flute", "half-plane", "infinite-crosscap", "jacobs-ladder", "model",
          "plane-grid"};
}

ExhaustionStream make_builder(const std::string& name, const std::map<std::string, std::int64_t>& params) {
  auto allow = [&](std::set<std::string> keys) {
    for (const auto& [k, v] : params)
      if (!keys.count(k)) throw Error(Error::Kind::InvalidArgument, "builder " + name + " has no parameter " + k);
  };
  auto get = [&](const std::string& k, std::int64_t fallback) {
    auto it = params.find(k);
    return static_cast<std::int32_t>(it == params.end() ? fallback : it->second);
  };
  if (name == "plane-grid") return allow({}), plane_grid_stream();
  if (name == "half-plane") return allow({}), half_plane_stream();
  if (name == "cylinder") return allow({"circumference"}), cylinder_stream(get("circumference", 6));
  if (name == "flute") return allow({}), flute_stream();
  if (name == "jacobs-ladder") return allow({}), jacobs_ladder_stream();
  if (name == "infinite-crosscap") return allow({}), infinite_crosscap_stream();
  if (name == "binary-tree") return allow({}), binary_tree_stream();
  if (name == "model") {
    allow({"handles", "crosscaps", "boundary", "ends", "handle_ends", "crosscap_ends"});
    return model_stream({get("handles", 0), get("crosscaps", 0), get("boundary", 0), get("ends", 1),
                         get("handle_ends", 0), get("crosscap_ends", 0)});
  }
  throw Error(Error::Kind::InvalidArgument, "unknown builder " + name);
}

}  // namespace surfends
