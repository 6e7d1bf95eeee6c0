#include "surfends/core/complex.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "surfends/core/union_find.hpp"

namespace surfends {

void throw_domain(const std::string& what) { throw Error(Error::Kind::Domain, what); }

namespace {

std::uint64_t edge_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

// Counting-sort style CSR builder.
void build_csr(std::int32_t n, const std::vector<std::pair<std::int32_t, std::int32_t>>& pairs,
               std::vector<std::int32_t>& offset, std::vector<std::int32_t>& list) {
  offset.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [k, v] : pairs) ++offset[k + 1];
  for (std::int32_t i = 0; i < n; ++i) offset[i + 1] += offset[i];
  list.resize(pairs.size());
  std::vector<std::int32_t> cursor(offset.begin(), offset.end() - 1);
  for (const auto& [k, v] : pairs) list[cursor[k]++] = v;
}

}  // namespace

SurfaceComplex::SurfaceComplex(std::int32_t vertex_count, std::vector<Triangle> faces)
    : vertex_count_(vertex_count), faces_(std::move(faces)) {
  if (vertex_count_ < 0) throw Error(Error::Kind::InvalidArgument, "negative vertex count");
  const auto nf = static_cast<std::int32_t>(faces_.size());
  for (FaceId f = 0; f < nf; ++f) {
    for (VertexId v : faces_[f]) {
      if (v < 0 || v >= vertex_count_) {
        throw Error(Error::Kind::InvalidArgument,
                    "face " + std::to_string(f) + " references vertex " + std::to_string(v) +
                        " outside [0, " + std::to_string(vertex_count_) + ")");
      }
    }
  }

  // Edge table: sort (key, face, side) triples and group equal keys.
  struct Side {
    std::uint64_t key;
    FaceId face;
    std::int32_t side;
  };
  std::vector<Side> sides;
  sides.reserve(faces_.size() * 3);
  for (FaceId f = 0; f < nf; ++f) {
    const auto& t = faces_[f];
    for (int i = 0; i < 3; ++i) {
      VertexId a = t[i], b = t[(i + 1) % 3];
      if (a != b) sides.push_back({edge_key(a, b), f, i});
    }
  }
  std::sort(sides.begin(), sides.end(), [](const Side& x, const Side& y) {
    return x.key != y.key ? x.key < y.key : x.face < y.face;
  });

  face_edges_.assign(faces_.size(), {kNone, kNone, kNone});
  edge_face_list_.reserve(sides.size());
  for (std::size_t i = 0; i < sides.size();) {
    std::size_t j = i;
    const auto id = static_cast<EdgeId>(edges_.size());
    edges_.push_back(Edge{static_cast<VertexId>(sides[i].key >> 32),
                          static_cast<VertexId>(sides[i].key & 0xffffffffu)});
    for (; j < sides.size() && sides[j].key == sides[i].key; ++j) {
      face_edges_[sides[j].face][sides[j].side] = id;
      edge_face_list_.push_back(sides[j].face);
    }
    edge_face_offset_.push_back(static_cast<std::int32_t>(edge_face_list_.size()));
    i = j;
  }

  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  pairs.reserve(faces_.size() * 3);
  for (FaceId f = 0; f < nf; ++f) {
    const auto& t = faces_[f];
    pairs.emplace_back(t[0], f);
    if (t[1] != t[0]) pairs.emplace_back(t[1], f);
    if (t[2] != t[0] && t[2] != t[1]) pairs.emplace_back(t[2], f);
  }
  build_csr(vertex_count_, pairs, vertex_face_offset_, vertex_face_list_);

  pairs.clear();
  for (EdgeId e = 0; e < edge_count(); ++e) {
    pairs.emplace_back(edges_[e].first, e);
    pairs.emplace_back(edges_[e].second, e);
  }
  // Edges are already sorted by (first, second); the per-vertex order below
  // becomes sorted by opposite endpoint after a local sort.
  build_csr(vertex_count_, pairs, vertex_edge_offset_, vertex_edge_list_);
  for (VertexId v = 0; v < vertex_count_; ++v) {
    auto* b = vertex_edge_list_.data() + vertex_edge_offset_[v];
    auto* e = vertex_edge_list_.data() + vertex_edge_offset_[v + 1];
    std::sort(b, e, [&](EdgeId x, EdgeId y) {
      auto ox = edges_[x].first == v ? edges_[x].second : edges_[x].first;
      auto oy = edges_[y].first == v ? edges_[y].second : edges_[y].first;
      return ox < oy;
    });
  }
}

std::optional<EdgeId> SurfaceComplex::find_edge(VertexId a, VertexId b) const {
  if (a < 0 || b < 0 || a >= vertex_count_ || b >= vertex_count_ || a == b) return std::nullopt;
  auto list = vertex_edges(a);
  auto it = std::lower_bound(list.begin(), list.end(), b, [&](EdgeId e, VertexId target) {
    auto o = edges_[e].first == a ? edges_[e].second : edges_[e].first;
    return o < target;
  });
  if (it == list.end()) return std::nullopt;
  auto o = edges_[*it].first == a ? edges_[*it].second : edges_[*it].first;
  if (o != b) return std::nullopt;
  return *it;
}

bool SurfaceComplex::is_degenerate(FaceId f) const {
  const auto& t = faces_[f];
  return t[0] == t[1] || t[1] == t[2] || t[0] == t[2];
}

FaceId SurfaceComplex::across(EdgeId e, FaceId f) const {
  auto fs = edge_faces(e);
  if (fs.size() != 2) return kNone;
  return fs[0] == f ? fs[1] : fs[0];
}

// ---------------------------------------------------------------------------

Subcomplex Subcomplex::empty(const SurfaceComplex& s) {
  return closure_of(s, {}, {}, {});
}

Subcomplex Subcomplex::closure_of(const SurfaceComplex& s, std::span<const FaceId> faces,
                                  std::span<const Edge> edges, std::span<const VertexId> vertices,
                                  std::int32_t* added) {
  Subcomplex k;
  k.vertex_mask_.assign(s.vertex_count(), 0);
  k.edge_mask_.assign(s.edge_count(), 0);
  k.face_mask_.assign(s.face_count(), 0);
  std::int32_t listed = 0;
  for (FaceId f : faces) {
    if (f < 0 || f >= s.face_count()) {
      throw Error(Error::Kind::InvalidArgument, "subcomplex face " + std::to_string(f) + " out of range");
    }
    if (!k.face_mask_[f]) ++listed;
    k.face_mask_[f] = 1;
  }
  for (const Edge& e : edges) {
    auto id = s.find_edge(e.first, e.second);
    if (!id) {
      throw Error(Error::Kind::InvalidArgument, "subcomplex edge [" + std::to_string(e.first) + "," +
                                                    std::to_string(e.second) + "] is not an edge");
    }
    if (!k.edge_mask_[*id]) ++listed;
    k.edge_mask_[*id] = 1;
  }
  for (VertexId v : vertices) {
    if (v < 0 || v >= s.vertex_count()) {
      throw Error(Error::Kind::InvalidArgument, "subcomplex vertex " + std::to_string(v) + " out of range");
    }
    if (!k.vertex_mask_[v]) ++listed;
    k.vertex_mask_[v] = 1;
  }
  for (FaceId f = 0; f < s.face_count(); ++f) {
    if (!k.face_mask_[f]) continue;
    for (EdgeId e : s.face_edges(f)) {
      if (e != kNone) k.edge_mask_[e] = 1;
    }
    for (VertexId v : s.face(f)) k.vertex_mask_[v] = 1;
  }
  for (EdgeId e = 0; e < s.edge_count(); ++e) {
    if (!k.edge_mask_[e]) continue;
    k.vertex_mask_[s.edge(e).first] = 1;
    k.vertex_mask_[s.edge(e).second] = 1;
  }
  std::int32_t total = 0;
  for (VertexId v = 0; v < s.vertex_count(); ++v) {
    if (k.vertex_mask_[v]) k.vertices_.push_back(v);
  }
  for (EdgeId e = 0; e < s.edge_count(); ++e) {
    if (k.edge_mask_[e]) k.edges_.push_back(e);
  }
  for (FaceId f = 0; f < s.face_count(); ++f) {
    if (k.face_mask_[f]) k.faces_.push_back(f);
  }
  total = static_cast<std::int32_t>(k.vertices_.size() + k.edges_.size() + k.faces_.size());
  if (added) *added = total - listed;
  return k;
}

std::vector<std::vector<VertexId>> Subcomplex::components(const SurfaceComplex& s) const {
  UnionFind uf(s.vertex_count());
  for (EdgeId e : edges_) uf.unite(s.edge(e).first, s.edge(e).second);
  std::vector<std::int32_t> slot(s.vertex_count(), kNone);
  std::vector<std::vector<VertexId>> out;
  for (VertexId v : vertices_) {
    auto r = uf.find(v);
    if (slot[r] == kNone) {
      slot[r] = static_cast<std::int32_t>(out.size());
      out.emplace_back();
    }
    out[slot[r]].push_back(v);
  }
  return out;
}

std::int32_t Subcomplex::component_count(const SurfaceComplex& s) const {
  return static_cast<std::int32_t>(components(s).size());
}

// ---------------------------------------------------------------------------

ValidationReport validate_surface(const SurfaceComplex& s) {
  ValidationReport report;
  const auto nf = s.face_count();

  for (FaceId f = 0; f < nf; ++f) {
    if (s.is_degenerate(f)) {
      report.issues.push_back({"degenerate_face", "face " + std::to_string(f) + " repeats a vertex", {f}});
    }
  }

  {
    std::vector<std::pair<Triangle, FaceId>> sorted;
    sorted.reserve(nf);
    for (FaceId f = 0; f < nf; ++f) {
      auto t = s.face(f);
      std::sort(t.begin(), t.end());
      sorted.emplace_back(t, f);
    }
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      if (sorted[i].first == sorted[i - 1].first) {
        report.issues.push_back({"duplicate_face",
                                 "faces " + std::to_string(sorted[i - 1].second) + " and " +
                                     std::to_string(sorted[i].second) + " share a vertex triple",
                                 {sorted[i - 1].second, sorted[i].second}});
      }
    }
  }

  for (EdgeId e = 0; e < s.edge_count(); ++e) {
    auto n = s.edge_faces(e).size();
    if (n > 2) {
      auto [a, b] = s.edge(e);
      report.issues.push_back({"edge_incidence",
                               "edge [" + std::to_string(a) + "," + std::to_string(b) + "] has " +
                                   std::to_string(n) + " incident faces",
                               {a, b}});
    }
  }

  // Vertex links: the faces around v must form one path or one cycle.
  std::vector<VertexId> link_vertices;
  std::vector<std::pair<VertexId, VertexId>> link_edges;
  for (VertexId v = 0; v < s.vertex_count(); ++v) {
    auto star = s.vertex_faces(v);
    if (star.empty()) {
      report.issues.push_back({"isolated_vertex", "vertex " + std::to_string(v) + " lies on no face", {v}});
      continue;
    }
    link_vertices.clear();
    link_edges.clear();
    for (FaceId f : star) {
      if (s.is_degenerate(f)) continue;
      const auto& t = s.face(f);
      VertexId a = kNone, b = kNone;
      for (VertexId w : t) {
        if (w == v) continue;
        (a == kNone ? a : b) = w;
      }
      link_edges.emplace_back(a, b);
      link_vertices.push_back(a);
      link_vertices.push_back(b);
    }
    std::sort(link_vertices.begin(), link_vertices.end());
    link_vertices.erase(std::unique(link_vertices.begin(), link_vertices.end()), link_vertices.end());
    const auto n = static_cast<std::int32_t>(link_vertices.size());
    auto index = [&](VertexId w) {
      return static_cast<std::int32_t>(std::lower_bound(link_vertices.begin(), link_vertices.end(), w) -
                                       link_vertices.begin());
    };
    std::vector<std::int32_t> degree(n, 0);
    UnionFind uf(n);
    for (auto [a, b] : link_edges) {
      auto ia = index(a), ib = index(b);
      ++degree[ia];
      ++degree[ib];
      uf.unite(ia, ib);
    }
    bool branching = std::any_of(degree.begin(), degree.end(), [](std::int32_t d) { return d > 2; });
    std::int32_t parts = 0;
    for (std::int32_t i = 0; i < n; ++i) parts += uf.find(i) == i ? 1 : 0;
    if (branching) {
      report.issues.push_back({"nonmanifold_vertex",
                               "link of vertex " + std::to_string(v) + " branches", {v}});
    } else if (parts > 1) {
      report.issues.push_back({"pinched_vertex",
                               "link of vertex " + std::to_string(v) + " has " + std::to_string(parts) +
                                   " components",
                               {v}});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

std::int32_t label_face_components(const SurfaceComplex& s, std::span<const char> face_mask,
                                   std::span<const char> edge_blocked,
                                   std::vector<std::int32_t>& labels) {
  const auto nf = s.face_count();
  labels.assign(nf, kNone);
  auto in = [&](FaceId f) { return face_mask.empty() || face_mask[f] != 0; };
  auto blocked = [&](EdgeId e) { return !edge_blocked.empty() && edge_blocked[e] != 0; };
  UnionFind uf(nf);
  for (EdgeId e = 0; e < s.edge_count(); ++e) {
    if (blocked(e)) continue;
    auto fs = s.edge_faces(e);
    if (fs.size() != 2) continue;
    if (in(fs[0]) && in(fs[1])) uf.unite(fs[0], fs[1]);
  }
  std::vector<std::int32_t> slot(nf, kNone);
  std::int32_t count = 0;
  for (FaceId f = 0; f < nf; ++f) {
    if (!in(f)) continue;
    auto r = uf.find(f);
    if (slot[r] == kNone) slot[r] = count++;
    labels[f] = slot[r];
  }
  return count;
}

std::vector<Region> connected_components(const SurfaceComplex& s) {
  std::vector<std::int32_t> labels;
  auto n = label_face_components(s, {}, {}, labels);
  std::vector<Region> out(n);
  for (FaceId f = 0; f < s.face_count(); ++f) out[labels[f]].faces.push_back(f);
  return out;
}

std::int64_t euler_characteristic(const SurfaceComplex& s) {
  std::int64_t used = 0;
  for (VertexId v = 0; v < s.vertex_count(); ++v) used += s.vertex_faces(v).empty() ? 0 : 1;
  return used - s.edge_count() + s.face_count();
}

std::vector<BoundaryCycle> boundary_components(const SurfaceComplex& s) {
  std::vector<char> used(s.edge_count(), 0);
  std::vector<BoundaryCycle> out;

  auto other_edge_at = [&](FaceId f, EdgeId e, VertexId w) {
    for (EdgeId x : s.face_edges(f)) {
      if (x == kNone || x == e) continue;
      auto ed = s.edge(x);
      if (ed.first == w || ed.second == w) return x;
    }
    return static_cast<EdgeId>(kNone);
  };

  for (EdgeId start = 0; start < s.edge_count(); ++start) {
    if (used[start] || !s.is_boundary_edge(start)) continue;
    BoundaryCycle cycle;
    // Orient the walk along the face's vertex order.
    FaceId f0 = s.edge_faces(start)[0];
    const auto& t = s.face(f0);
    VertexId from = s.edge(start).first, to = s.edge(start).second;
    for (int i = 0; i < 3; ++i) {
      if (s.face_edges(f0)[i] == start) {
        from = t[i];
        to = t[(i + 1) % 3];
      }
    }
    EdgeId e = start;
    FaceId f = f0;
    cycle.min_face = f0;
    cycle.vertices.push_back(from);
    while (true) {
      used[e] = 1;
      cycle.edges.push_back(e);
      cycle.min_face = std::min(cycle.min_face, f);
      // Walk around `to` through interior edges until the next boundary edge.
      EdgeId cur = e;
      FaceId face = f;
      std::int32_t guard = 0;
      while (true) {
        EdgeId nxt = other_edge_at(face, cur, to);
        if (nxt == kNone) break;
        if (s.is_boundary_edge(nxt) || s.edge_faces(nxt).size() != 2) {
          cur = nxt;
          break;
        }
        face = s.across(nxt, face);
        cur = nxt;
        cycle.min_face = std::min(cycle.min_face, face);
        if (++guard > s.face_count()) break;
      }
      if (cur == kNone || used[cur] || !s.is_boundary_edge(cur)) break;
      auto ed = s.edge(cur);
      VertexId next_to = ed.first == to ? ed.second : ed.first;
      cycle.vertices.push_back(to);
      e = cur;
      f = s.edge_faces(cur)[0];
      to = next_to;
    }
    out.push_back(std::move(cycle));
  }
  std::sort(out.begin(), out.end(),
            [](const BoundaryCycle& a, const BoundaryCycle& b) { return a.min_face < b.min_face; });
  return out;
}

OrientationResult orient(const SurfaceComplex& s, std::span<const char> face_mask,
                         std::span<const char> edge_blocked) {
  const auto nf = s.face_count();
  OrientationResult r;
  r.face_sign.assign(nf, 0);
  auto in = [&](FaceId f) { return (face_mask.empty() || face_mask[f] != 0) && !s.is_degenerate(f); };
  auto blocked = [&](EdgeId e) { return !edge_blocked.empty() && edge_blocked[e] != 0; };
  // +1 when the face's stored order traverses a -> b.
  auto direction = [&](FaceId f, VertexId a, VertexId b) -> int {
    const auto& t = s.face(f);
    for (int i = 0; i < 3; ++i) {
      if (t[i] == a && t[(i + 1) % 3] == b) return 1;
    }
    return -1;
  };
  std::queue<FaceId> q;
  for (FaceId seed = 0; seed < nf; ++seed) {
    if (!in(seed) || r.face_sign[seed] != 0) continue;
    r.face_sign[seed] = 1;
    q.push(seed);
    while (!q.empty()) {
      FaceId f = q.front();
      q.pop();
      for (EdgeId e : s.face_edges(f)) {
        if (e == kNone || blocked(e)) continue;
        FaceId g = s.across(e, f);
        if (g == kNone || !in(g)) continue;
        auto [a, b] = s.edge(e);
        int want = -r.face_sign[f] * direction(f, a, b) * direction(g, a, b);
        if (r.face_sign[g] == 0) {
          r.face_sign[g] = static_cast<std::int8_t>(want);
          q.push(g);
        } else if (r.face_sign[g] != want && r.orientable) {
          r.orientable = false;
          r.conflict_edge = e;
        }
      }
    }
  }
  return r;
}

std::vector<Orientability> orientability(const SurfaceComplex& s) {
  std::vector<std::int32_t> labels;
  auto n = label_face_components(s, {}, {}, labels);
  std::vector<Orientability> out(n, Orientability::Orientable);
  auto r = orient(s);
  if (r.orientable) return out;
  // Re-run per component so one conflict does not taint the others.
  for (std::int32_t c = 0; c < n; ++c) {
    std::vector<char> mask(s.face_count(), 0);
    for (FaceId f = 0; f < s.face_count(); ++f) mask[f] = labels[f] == c;
    if (!orient(s, mask).orientable) out[c] = Orientability::Nonorientable;
  }
  return out;
}

Genus genus_from_counts(std::int64_t chi, std::int64_t boundary_cycles, bool orientable) {
  Genus g;
  if (orientable) {
    g.orientability = Orientability::Orientable;
    g.value = (2 - chi - boundary_cycles) / 2;
  } else {
    g.orientability = Orientability::Nonorientable;
    g.value = 2 - chi - boundary_cycles;
  }
  return g;
}

Genus genus(const SurfaceComplex& s) {
  auto comps = connected_components(s);
  if (comps.size() != 1) {
    throw_domain("genus requires a connected complex (found " + std::to_string(comps.size()) +
                 " components)");
  }
  auto chi = euler_characteristic(s);
  auto b = static_cast<std::int64_t>(boundary_components(s).size());
  return genus_from_counts(chi, b, orient(s).orientable);
}

SurfaceComplex relabel(const SurfaceComplex& s, std::span<const VertexId> perm) {
  std::vector<Triangle> faces(s.faces().begin(), s.faces().end());
  for (auto& t : faces) {
    for (auto& v : t) v = perm[v];
  }
  return SurfaceComplex(s.vertex_count(), std::move(faces));
}

SurfaceComplex disjoint_union(const SurfaceComplex& a, const SurfaceComplex& b) {
  std::vector<Triangle> faces(a.faces().begin(), a.faces().end());
  for (auto t : b.faces()) {
    for (auto& v : t) v += a.vertex_count();
    faces.push_back(t);
  }
  return SurfaceComplex(a.vertex_count() + b.vertex_count(), std::move(faces));
}

}  // namespace surfends
