#include "surfends/core/assembler.hpp"

#include <algorithm>
#include <numeric>

namespace surfends {

std::vector<FaceId> LayeredComplex::faces_up_to(std::int32_t n) const {
  std::vector<FaceId> out;
  for (FaceId f = 0; f < complex.face_count(); ++f)
    if (face_layer[f] <= n) out.push_back(f);
  return out;
}

std::vector<char> LayeredComplex::mask_up_to(std::int32_t n) const {
  std::vector<char> mask(complex.face_count(), 0);
  for (FaceId f = 0; f < complex.face_count(); ++f) mask[f] = face_layer[f] <= n ? 1 : 0;
  return mask;
}

Subcomplex LayeredComplex::subcomplex_up_to(std::int32_t n) const {
  auto faces = faces_up_to(n);
  return Subcomplex::closure_of(complex, faces, {}, {});
}

std::int32_t LayeredComplex::vertex_layer(VertexId v) const {
  std::int32_t best = depth + 1;
  for (FaceId f : complex.vertex_faces(v)) best = std::min(best, face_layer[f]);
  return best;
}

std::vector<VertexId> Assembler::add_cycle(std::int32_t length) {
  std::vector<VertexId> cycle(length);
  for (auto& v : cycle) v = add_vertex();
  return cycle;
}

std::size_t Assembler::add_face(VertexId a, VertexId b, VertexId c, std::int32_t layer) {
  faces_.push_back({a, b, c});
  layers_.push_back(layer);
  removed_.push_back(0);
  return faces_.size() - 1;
}

std::vector<std::size_t> Assembler::band(std::span<const VertexId> a, std::span<const VertexId> b,
                                         std::int32_t layer) {
  const std::int64_t p = static_cast<std::int64_t>(a.size());
  const std::int64_t q = static_cast<std::int64_t>(b.size());
  std::vector<std::size_t> out;
  std::int64_t i = 0, j = 0;
  while (i < p || j < q) {
    bool step_a = j == q || (i < p && (i + 1) * q <= (j + 1) * p);
    if (step_a) {
      out.push_back(add_face(a[i % p], a[(i + 1) % p], b[j % q], layer));
      ++i;
    } else {
      out.push_back(add_face(a[i % p], b[(j + 1) % q], b[j % q], layer));
      ++j;
    }
  }
  return out;
}

VertexId Assembler::cone(std::span<const VertexId> cycle, std::int32_t layer) {
  VertexId apex = add_vertex();
  for (std::size_t i = 0; i < cycle.size(); ++i)
    add_face(cycle[i], cycle[(i + 1) % cycle.size()], apex, layer);
  return apex;
}

void Assembler::attach_closed(std::size_t face_index, std::span<const Triangle> closed, std::int32_t nv,
                              const Triangle& removed, std::int32_t layer) {
  Triangle host = faces_[face_index];
  remove_face(face_index);
  std::vector<VertexId> map(nv, kNone);
  for (int i = 0; i < 3; ++i) map[removed[i]] = host[i];
  for (auto& v : map)
    if (v == kNone) v = add_vertex();
  auto same = [](Triangle x, Triangle y) {
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    return x == y;
  };
  for (const auto& t : closed) {
    if (same(t, removed)) continue;
    add_face(map[t[0]], map[t[1]], map[t[2]], layer);
  }
}

void Assembler::attach_handle(std::size_t face_index, std::int32_t layer) {
  auto torus = seven_vertex_torus();
  attach_closed(face_index, torus, 7, torus[0], layer);
}

void Assembler::attach_crosscap(std::size_t face_index, std::int32_t layer) {
  auto rp2 = six_vertex_projective_plane();
  attach_closed(face_index, rp2, 6, rp2[0], layer);
}

LayeredComplex Assembler::finish(std::int32_t depth, std::vector<VertexId>* renumber_out) const {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < faces_.size(); ++i)
    if (!removed_[i]) order.push_back(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return layers_[x] < layers_[y]; });
  std::vector<VertexId> renumber(next_vertex_, kNone);
  VertexId next = 0;
  std::vector<Triangle> faces;
  std::vector<std::int32_t> layers;
  faces.reserve(order.size());
  for (std::size_t i : order) {
    Triangle t = faces_[i];
    for (auto& v : t) {
      if (renumber[v] == kNone) renumber[v] = next++;
      v = renumber[v];
    }
    faces.push_back(t);
    layers.push_back(layers_[i]);
  }
  if (renumber_out) *renumber_out = renumber;
  LayeredComplex out;
  out.complex = SurfaceComplex(next, std::move(faces));
  out.face_layer = std::move(layers);
  out.depth = depth;
  return out;
}

void LatticePatch::record_coords(LayeredComplex& lc, const std::vector<VertexId>& renumber) const {
  lc.vertex_coords.assign(lc.complex.vertex_count(), kOffLattice);
  for (const auto& [xy, v] : ids_)
    if (renumber[v] != kNone) lc.vertex_coords[renumber[v]] = {xy.first, xy.second};
}

VertexId LatticePatch::find(std::int32_t x, std::int32_t y) const {
  auto it = ids_.find({wrap(x), y});
  return it == ids_.end() ? kNone : it->second;
}

VertexId LatticePatch::at(std::int32_t x, std::int32_t y) {
  auto [it, inserted] = ids_.try_emplace({wrap(x), y}, kNone);
  if (inserted) it->second = a_.add_vertex();
  return it->second;
}

std::pair<std::size_t, std::size_t> LatticePatch::add_cell(std::int32_t x, std::int32_t y,
                                                           std::int32_t layer) {
  VertexId p00 = at(x, y), p10 = at(x + 1, y), p11 = at(x + 1, y + 1), p01 = at(x, y + 1);
  std::size_t f1 = a_.add_face(p00, p10, p11, layer);
  std::size_t f2 = a_.add_face(p00, p11, p01, layer);
  return {f1, f2};
}

std::vector<VertexId> LatticePatch::cell_cycle(std::int32_t x, std::int32_t y) {
  return {at(x, y), at(x + 1, y), at(x + 1, y + 1), at(x, y + 1)};
}

std::vector<Triangle> seven_vertex_torus() {
  std::vector<Triangle> out;
  for (VertexId i = 0; i < 7; ++i) {
    out.push_back({i, (i + 1) % 7, (i + 3) % 7});
    out.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return out;
}

std::vector<Triangle> six_vertex_projective_plane() {
  return {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
          {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}};
}

SurfaceComplex compact_model(std::int32_t handles, std::int32_t crosscaps, std::int32_t holes) {
  const std::int32_t features = std::max(1, handles + crosscaps + holes);
  const std::int32_t width = 2 * features + 1;
  Assembler a;
  LatticePatch grid(a);
  std::vector<std::pair<std::size_t, std::size_t>> cells(static_cast<std::size_t>(width) * 3);
  for (std::int32_t y = 0; y < 3; ++y)
    for (std::int32_t x = 0; x < width; ++x) cells[y * width + x] = grid.add_cell(x, y, 1);
  std::int32_t slot = 0;
  auto next_cell = [&] { return cells[1 * width + (2 * slot++ + 1)]; };
  for (std::int32_t i = 0; i < handles; ++i) a.attach_handle(next_cell().first, 1);
  for (std::int32_t i = 0; i < crosscaps; ++i) a.attach_crosscap(next_cell().first, 1);
  for (std::int32_t i = 0; i < holes; ++i) {
    auto c = next_cell();
    a.remove_face(c.first);
    a.remove_face(c.second);
  }
  std::vector<VertexId> outer;
  for (std::int32_t x = 0; x < width; ++x) outer.push_back(grid.at(x, 0));
  for (std::int32_t y = 0; y < 3; ++y) outer.push_back(grid.at(width, y));
  for (std::int32_t x = width; x > 0; --x) outer.push_back(grid.at(x, 3));
  for (std::int32_t y = 3; y > 0; --y) outer.push_back(grid.at(0, y));
  a.cone(outer, 1);
  return a.finish(1).complex;
}

}  // namespace surfends
