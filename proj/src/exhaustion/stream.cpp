#include "surfends/exhaustion/stream.hpp"

#include <algorithm>
#include <set>

#include "surfends/core/region.hpp"

namespace surfends {

ExhaustionStream::ExhaustionStream(StreamInfo info, Producer producer, SymmetryProducer symmetries)
    : info_(std::move(info)), producer_(std::move(producer)), symmetries_(std::move(symmetries)) {}

std::shared_ptr<const LayeredComplex> ExhaustionStream::materialize(std::int32_t depth) const {
  if (depth < 1) throw Error(Error::Kind::InvalidArgument, "depth must be at least 1");
  std::lock_guard<std::mutex> lock(cache_->mutex);
  auto& cache = cache_->entries;
  if (auto it = cache.find(depth); it != cache.end()) return it->second;
  if (depth > info_.max_depth) {
    throw Error(Error::Kind::Domain, "producer failed at depth " + std::to_string(depth) + ": stream '" +
                                         info_.name + "' provides only " + std::to_string(info_.max_depth) +
                                         " depths");
  }
  std::shared_ptr<const LayeredComplex> lc;
  try {
    lc = std::make_shared<const LayeredComplex>(producer_(depth));
  } catch (const Error& e) {
    throw Error(e.kind(), "producer failed at depth " + std::to_string(depth) + ": " + e.what());
  } catch (const std::exception& e) {
    throw Error(Error::Kind::Domain, "producer failed at depth " + std::to_string(depth) + ": " + e.what());
  }
  // Keep the cache small: horizons are usually explored upward.
  if (cache.size() >= 4) cache.erase(cache.begin());
  cache.emplace(depth, lc);
  return lc;
}

std::vector<DeclaredSymmetry> ExhaustionStream::symmetries(std::int32_t depth) const {
  if (!symmetries_) return {};
  return symmetries_(depth);
}

LayeredComplex truncate(const LayeredComplex& lc, std::int32_t depth) {
  std::vector<Triangle> faces;
  std::vector<std::int32_t> layers;
  VertexId max_vertex = -1;
  for (FaceId f = 0; f < lc.complex.face_count(); ++f) {
    if (lc.face_layer[f] > depth) continue;
    faces.push_back(lc.complex.face(f));
    layers.push_back(lc.face_layer[f]);
    for (VertexId v : faces.back()) max_vertex = std::max(max_vertex, v);
  }
  LayeredComplex out;
  out.complex = SurfaceComplex(max_vertex + 1, std::move(faces));
  out.face_layer = std::move(layers);
  out.depth = std::min(depth, lc.depth);
  if (!lc.vertex_coords.empty())
    out.vertex_coords.assign(lc.vertex_coords.begin(), lc.vertex_coords.begin() + out.complex.vertex_count());
  return out;
}

ExhaustionStream fixed_stream(StreamInfo info, LayeredComplex universe) {
  info.max_depth = universe.depth;
  auto shared = std::make_shared<const LayeredComplex>(std::move(universe));
  return ExhaustionStream(std::move(info), [shared](std::int32_t depth) { return truncate(*shared, depth); });
}

ExhaustionStream subsample(const ExhaustionStream& s, std::int32_t k) {
  if (k < 1) throw Error(Error::Kind::InvalidArgument, "subsample factor must be positive");
  StreamInfo info = s.info();
  info.name += "/every-" + std::to_string(k);
  info.max_depth = s.info().max_depth / k;
  return ExhaustionStream(std::move(info), [base = s, k](std::int32_t depth) {
    LayeredComplex lc = *base.materialize(depth * k);
    for (auto& l : lc.face_layer) l = (l + k - 1) / k;
    lc.depth = depth;
    return lc;
  });
}

DepthBoundary depth_boundary(const LayeredComplex& universe, std::int32_t n) {
  const auto& s = universe.complex;
  auto faces = universe.faces_up_to(n);
  std::vector<VertexId> origin;
  SurfaceComplex piece = region_complex(s, faces, {}, &origin);
  DepthBoundary out;
  for (const auto& cycle : boundary_components(piece)) {
    BoundaryCycle mapped;
    std::int32_t on_ambient = 0;
    for (VertexId v : cycle.vertices) mapped.vertices.push_back(origin[v]);
    for (EdgeId e : cycle.edges) {
      auto [a, b] = piece.edge(e);
      EdgeId ambient = *s.find_edge(origin[a], origin[b]);
      mapped.edges.push_back(ambient);
      if (s.is_boundary_edge(ambient) && universe.face_layer[s.edge_faces(ambient)[0]] < universe.depth)
        ++on_ambient;
    }
    mapped.min_face = cycle.min_face == kNone ? kNone : faces[cycle.min_face];
    if (on_ambient == 0)
      out.frontier.push_back(std::move(mapped));
    else if (on_ambient == static_cast<std::int32_t>(cycle.edges.size()))
      out.ambient.push_back(std::move(mapped));
    else
      out.mixed.push_back(std::move(mapped));
  }
  return out;
}

std::int32_t complement_components(const LayeredComplex& universe, std::int32_t n,
                                   std::vector<std::int32_t>& labels) {
  std::vector<char> mask(universe.complex.face_count());
  for (FaceId f = 0; f < universe.complex.face_count(); ++f) mask[f] = universe.face_layer[f] > n ? 1 : 0;
  return label_face_components(universe.complex, mask, {}, labels);
}

namespace {

std::string depth_text(std::int32_t n) { return "F_" + std::to_string(n); }

}  // namespace

ValidationReport validate_exhaustion(const ExhaustionStream& stream, std::int32_t depth) {
  if (depth < 1) throw Error(Error::Kind::InvalidArgument, "depth must be at least 1");
  ValidationReport report;
  const std::int32_t universe_depth = std::min(depth + 1, stream.info().max_depth);
  auto universe_ptr = stream.materialize(universe_depth);
  const LayeredComplex& u = *universe_ptr;
  const auto& s = u.complex;
  report.notes.push_back("trusted: exhaustive producer");
  if (universe_depth <= depth)
    report.notes.push_back("stream ends at depth " + std::to_string(universe_depth) +
                           "; the last depth is checked without a successor");

  for (std::int32_t n = 1; n <= std::min(depth, universe_depth); ++n) {
    auto faces = u.faces_up_to(n);
    if (faces.empty()) {
      report.issues.push_back({"empty_depth", depth_text(n) + " has no faces", {n}});
      continue;
    }
    // F_n must itself be a connected bordered surface.
    std::vector<VertexId> origin;
    std::vector<VertexId> local(s.vertex_count(), kNone);
    std::vector<Triangle> tris;
    for (FaceId f : faces) {
      Triangle t = s.face(f);
      for (auto& v : t) {
        if (local[v] == kNone) {
          local[v] = static_cast<VertexId>(origin.size());
          origin.push_back(v);
        }
        v = local[v];
      }
      tris.push_back(t);
    }
    SurfaceComplex fn(static_cast<std::int32_t>(origin.size()), std::move(tris));
    auto inner = validate_surface(fn);
    for (auto& issue : inner.issues) {
      std::vector<std::int32_t> cells;
      bool vertex_cells = issue.code.find("vertex") != std::string::npos || issue.code == "edge_incidence";
      for (auto c : issue.cells) cells.push_back(vertex_cells ? origin[c] : faces[c]);
      report.issues.push_back({"invalid_depth", depth_text(n) + ": " + issue.code, cells});
    }
    if (connected_components(fn).size() != 1)
      report.issues.push_back({"disconnected_depth", depth_text(n) + " is not connected", {n}});
  }

  for (std::int32_t n = 1; n < universe_depth && n <= depth; ++n) {
    // Axiom (a): every vertex of F_n has its whole star inside F_{n+1}.
    std::vector<std::int32_t> bad;
    for (VertexId v = 0; v < s.vertex_count(); ++v) {
      auto star = s.vertex_faces(v);
      if (star.empty()) continue;
      std::int32_t lo = u.depth + 1, hi = 0;
      for (FaceId f : star) {
        lo = std::min(lo, u.face_layer[f]);
        hi = std::max(hi, u.face_layer[f]);
      }
      if (lo <= n && hi > n + 1) bad.push_back(v);
    }
    if (!bad.empty())
      report.issues.push_back({"axiom_a", depth_text(n) + " is not inside the interior of " + depth_text(n + 1) +
                                              " at " + std::to_string(bad.size()) + " vertices",
                               bad});

    // Axiom (c): each complement component meets exactly one boundary cycle.
    auto boundary = depth_boundary(u, n);
    std::vector<const BoundaryCycle*> cycles;
    for (const auto& c : boundary.frontier) cycles.push_back(&c);
    for (const auto& c : boundary.mixed) cycles.push_back(&c);
    std::vector<std::int32_t> labels;
    std::int32_t count = complement_components(u, n, labels);
    std::vector<std::set<std::int32_t>> touched(count);
    std::vector<char> deeper(count, 0);
    for (std::size_t ci = 0; ci < cycles.size(); ++ci)
      for (VertexId v : cycles[ci]->vertices)
        for (FaceId f : s.vertex_faces(v))
          if (labels[f] != kNone) touched[labels[f]].insert(static_cast<std::int32_t>(ci));
    for (FaceId f = 0; f < s.face_count(); ++f)
      if (labels[f] != kNone && u.face_layer[f] > n + 1) deeper[labels[f]] = 1;
    for (std::int32_t c = 0; c < count; ++c) {
      if (touched[c].size() != 1)
        report.issues.push_back({"axiom_c", "component " + std::to_string(c) + " of the complement of " +
                                                depth_text(n) + " meets " + std::to_string(touched[c].size()) +
                                                " boundary cycles",
                                 {n, c}});
      if (n + 1 < universe_depth && !deeper[c])
        report.issues.push_back({"bounded_complement", "component " + std::to_string(c) + " of the complement of " +
                                                           depth_text(n) + " is relatively compact",
                                 {n, c}});
    }
  }

  // Surfaces with boundary: the ambient boundary must lie in the interior of F_1.
  std::vector<std::int32_t> outside;
  for (EdgeId e = 0; e < s.edge_count(); ++e) {
    if (!s.is_boundary_edge(e)) continue;
    std::int32_t layer = u.face_layer[s.edge_faces(e)[0]];
    if (layer >= universe_depth) continue;
    for (VertexId v : {s.edge(e).first, s.edge(e).second})
      for (FaceId f : s.vertex_faces(v))
        if (u.face_layer[f] > 1) {
          outside.push_back(e);
          goto next_edge;
        }
  next_edge:;
  }
  if (!outside.empty()) {
    std::string msg = "ambient boundary is not inside the interior of F_1 (" + std::to_string(outside.size()) +
                      " boundary edges)";
    if (stream.info().compact_boundary)
      report.issues.push_back({"boundary_not_interior", msg, outside});
    else
      report.notes.push_back("warning: non-compact boundary; " + msg);
  }
  return report;
}

}  // namespace surfends
