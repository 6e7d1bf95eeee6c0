#include "surfends/residual/residual.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "surfends/core/union_find.hpp"

namespace surfends {

namespace {

// Vertex of the first barycentric subdivision, named by its carrier cell.
using ChildKey = std::int64_t;

ChildKey child_key(int dim, std::int32_t id) { return (static_cast<std::int64_t>(dim) << 32) | static_cast<std::uint32_t>(id); }
int key_dim(ChildKey k) { return static_cast<int>(k >> 32); }
std::int32_t key_id(ChildKey k) { return static_cast<std::int32_t>(k & 0xffffffff); }

struct PairHash {
  std::size_t operator()(const std::pair<ChildKey, ChildKey>& p) const noexcept {
    auto h = static_cast<std::uint64_t>(p.first) * 0x9e3779b97f4a7c15ull;
    h ^= static_cast<std::uint64_t>(p.second) + 0x7f4a7c159e3779b9ull + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

void sort_unique(std::vector<std::int32_t>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

Subcomplex make_subcomplex(const SurfaceComplex& s, const CellSet& cells, std::int32_t* added) {
  return Subcomplex::closure_of(s, cells.faces, cells.edges, cells.vertices, added);
}

DomainLabels residual_domains(const SurfaceComplex& s, const Subcomplex& k, const LayeredComplex* layers,
                              std::int32_t horizon) {
  const auto nf = s.face_count();
  std::vector<char> mask(nf, 1), blocked(s.edge_count(), 0);
  for (FaceId f : k.faces()) mask[f] = 0;
  for (EdgeId e : k.edges()) blocked[e] = 1;
  DomainLabels out;
  auto count = label_face_components(s, mask, blocked, out.face_domain);
  out.domains.resize(count);
  for (std::int32_t i = 0; i < count; ++i) out.domains[i].index = i;
  for (FaceId f = 0; f < nf; ++f) {
    auto d = out.face_domain[f];
    if (d == kNone) continue;
    out.domains[d].region.faces.push_back(f);
    if (layers && layers->face_layer[f] > horizon) out.domains[d].bounded = false;
  }
  // Only cells of K can sit in the closure of a domain without belonging to
  // it, so the frontier is collected from the stars of K.
  std::vector<std::int32_t> touched;
  for (EdgeId e : k.edges()) {
    touched.clear();
    for (FaceId f : s.edge_faces(e))
      if (out.face_domain[f] != kNone) touched.push_back(out.face_domain[f]);
    sort_unique(touched);
    for (auto d : touched) out.domains[d].frontier.edges.push_back(e);
  }
  for (VertexId v : k.vertices()) {
    touched.clear();
    for (FaceId f : s.vertex_faces(v))
      if (out.face_domain[f] != kNone) touched.push_back(out.face_domain[f]);
    sort_unique(touched);
    for (auto d : touched) out.domains[d].frontier.vertices.push_back(v);
  }
  for (auto& d : out.domains) {
    std::sort(d.frontier.edges.begin(), d.frontier.edges.end());
    std::sort(d.frontier.vertices.begin(), d.frontier.vertices.end());
  }
  return out;
}

bool meets_boundary(const SurfaceComplex& s, const Subcomplex& k) {
  for (VertexId v : k.vertices())
    for (EdgeId e : s.vertex_edges(v))
      if (s.is_boundary_edge(e)) return true;
  return false;
}

Augmented augment(const SurfaceComplex& s, const Subcomplex& k) {
  auto cycles = boundary_components(s);
  std::vector<Triangle> faces(s.faces().begin(), s.faces().end());
  std::vector<FaceId> k_faces = k.faces();
  VertexId apex = s.vertex_count();
  for (const auto& c : cycles) {
    const auto len = c.vertices.size();
    for (std::size_t i = 0; i < len; ++i) {
      k_faces.push_back(static_cast<FaceId>(faces.size()));
      faces.push_back({c.vertices[i], c.vertices[(i + 1) % len], apex});
    }
    ++apex;
  }
  Augmented out;
  out.circles = static_cast<std::int32_t>(cycles.size());
  out.complex = SurfaceComplex(apex, std::move(faces));
  std::vector<Edge> k_edges;
  for (EdgeId e : k.edges()) k_edges.push_back(s.edge(e));
  out.k = Subcomplex::closure_of(out.complex, k_faces, k_edges, k.vertices());
  return out;
}

LocalEnds collar_ends(const SurfaceComplex& s, const Subcomplex& k, std::span<const std::int32_t> face_domain,
                      std::int32_t* open_chains) {
  std::vector<FaceId> touched;
  for (VertexId v : k.vertices())
    for (FaceId f : s.vertex_faces(v))
      if (!k.has_face(f)) touched.push_back(f);
  sort_unique(touched);

  auto in_k = [&](ChildKey c) {
    switch (key_dim(c)) {
      case 0: return k.has_vertex(key_id(c));
      case 1: return k.has_edge(key_id(c));
      default: return k.has_face(key_id(c));
    }
  };

  struct Mixed {
    std::int32_t a, b;  // the two mixed edges
    FaceId parent;
    std::array<ChildKey, 3> corners;
  };
  std::unordered_map<std::pair<ChildKey, ChildKey>, std::int32_t, PairHash> node_id;
  std::vector<std::int32_t> node_use;
  std::vector<Mixed> mixed;
  auto node = [&](ChildKey x, ChildKey y) {
    auto key = x < y ? std::make_pair(x, y) : std::make_pair(y, x);
    auto [it, fresh] = node_id.try_emplace(key, static_cast<std::int32_t>(node_use.size()));
    if (fresh) node_use.push_back(0);
    ++node_use[it->second];
    return it->second;
  };

  for (FaceId f : touched) {
    const auto& t = s.face(f);
    const auto& fe = s.face_edges(f);
    const ChildKey center = child_key(2, f);
    for (int i = 0; i < 3; ++i) {
      const ChildKey mid = child_key(1, fe[i]);
      const std::array<std::array<ChildKey, 3>, 2> kids{{{child_key(0, t[i]), mid, center},
                                                         {mid, child_key(0, t[(i + 1) % 3]), center}}};
      for (const auto& c : kids) {
        const std::array<bool, 3> in{in_k(c[0]), in_k(c[1]), in_k(c[2])};
        const int count = in[0] + in[1] + in[2];
        if (count == 0 || count == 3) continue;
        std::array<std::int32_t, 2> ends{};
        int n = 0;
        for (int j = 0; j < 3; ++j) {
          const int l = (j + 1) % 3;
          if (in[j] == in[l]) continue;
          ends[n++] = node(c[j], c[l]);
        }
        mixed.push_back({ends[0], ends[1], f, c});
      }
    }
  }

  UnionFind uf(static_cast<std::int32_t>(node_use.size()));
  for (const auto& m : mixed) uf.unite(m.a, m.b);

  std::map<std::int32_t, std::int32_t> slot;
  struct Acc {
    std::vector<FaceId> faces;
    std::vector<VertexId> vertices;
    std::vector<EdgeId> edges;
    std::vector<std::array<Carrier, 3>> triangles;
    bool open = false;
  };
  std::vector<Acc> acc;
  for (const auto& m : mixed) {
    auto r = uf.find(m.a);
    auto [it, fresh] = slot.try_emplace(r, static_cast<std::int32_t>(acc.size()));
    if (fresh) acc.emplace_back();
    auto& a = acc[it->second];
    a.faces.push_back(m.parent);
    std::array<Carrier, 3> tri;
    for (int j = 0; j < 3; ++j) tri[j] = {static_cast<std::int8_t>(key_dim(m.corners[j])), key_id(m.corners[j])};
    std::sort(tri.begin(), tri.end());
    a.triangles.push_back(tri);
    for (ChildKey c : m.corners) {
      if (!in_k(c)) continue;
      if (key_dim(c) == 0) a.vertices.push_back(key_id(c));
      else if (key_dim(c) == 1) a.edges.push_back(key_id(c));
    }
  }
  // A mixed edge seen by a single triangle lies on the boundary of S.
  for (std::size_t i = 0; i < node_use.size(); ++i) {
    if (node_use[i] < 2) acc[slot[uf.find(static_cast<std::int32_t>(i))]].open = true;
  }

  LocalEnds out;
  std::int32_t open = 0;
  for (auto& a : acc) {
    sort_unique(a.faces);
    sort_unique(a.vertices);
    sort_unique(a.edges);
    if (a.open) ++open;
    RelativeEnd e;
    e.domain = face_domain[a.faces.front()];
    e.impression = {a.vertices, a.edges};
    e.regular = !a.edges.empty() || a.vertices.size() > 1;
    e.collar_faces = std::move(a.faces);
    std::sort(a.triangles.begin(), a.triangles.end());
    e.collar_triangles = std::move(a.triangles);
    out.ends.push_back(std::move(e));
  }
  std::sort(out.ends.begin(), out.ends.end(), [](const RelativeEnd& x, const RelativeEnd& y) {
    if (x.domain != y.domain) return x.domain < y.domain;
    return x.collar_faces.front() < y.collar_faces.front();
  });
  for (std::size_t i = 0; i < out.ends.size(); ++i) out.ends[i].index = static_cast<std::int32_t>(i);
  if (open_chains) *open_chains = open;
  return out;
}

LocalEnds relatively_compact_ends(const SurfaceComplex& s, const Subcomplex& k,
                                  std::span<const std::int32_t> face_domain) {
  if (!meets_boundary(s, k)) return collar_ends(s, k, face_domain);
  auto aug = augment(s, k);
  std::vector<std::int32_t> domains(face_domain.begin(), face_domain.end());
  domains.resize(aug.complex.face_count(), kNone);
  auto out = collar_ends(aug.complex, aug.k, domains);
  out.augmented = true;
  const auto nv = s.vertex_count();
  for (auto& e : out.ends) {
    auto& imp = e.impression;
    std::erase_if(imp.vertices, [&](VertexId v) { return v >= nv; });
    std::vector<EdgeId> edges;
    for (EdgeId x : imp.edges) {
      auto ab = aug.complex.edge(x);
      if (ab.first >= nv || ab.second >= nv) continue;
      if (auto id = s.find_edge(ab.first, ab.second)) edges.push_back(*id);
    }
    std::sort(edges.begin(), edges.end());
    imp.edges = std::move(edges);
    e.regular = !imp.edges.empty() || imp.vertices.size() > 1;
    // Collar triangles sit in faces of S, so their edge carriers exist in S.
    for (auto& tri : e.collar_triangles) {
      for (auto& c : tri) {
        if (c.dim != 1) continue;
        auto ab = aug.complex.edge(c.id);
        c.id = *s.find_edge(ab.first, ab.second);
      }
      std::sort(tri.begin(), tri.end());
    }
    std::sort(e.collar_triangles.begin(), e.collar_triangles.end());
  }
  return out;
}

FrontierPieces frontier_components(const SurfaceComplex& s, const Region& u, const Subcomplex* k,
                                   std::span<const RelativeEnd> ends) {
  FrontierPieces out;
  out.pieces = cell_components(s, frontier_cells(s, u.faces, k));
  std::unordered_map<VertexId, std::int32_t> piece_of;
  for (std::size_t i = 0; i < out.pieces.size(); ++i) {
    const auto id = static_cast<std::int32_t>(i);
    for (VertexId v : out.pieces[i].vertices) piece_of[v] = id;
    for (EdgeId e : out.pieces[i].edges) {
      piece_of[s.edge(e).first] = id;
      piece_of[s.edge(e).second] = id;
    }
  }
  for (const auto& e : ends) {
    std::int32_t piece = kNone;
    for (VertexId v : e.impression.vertices) {
      if (auto it = piece_of.find(v); it != piece_of.end()) {
        piece = it->second;
        break;
      }
    }
    out.end_piece.push_back(piece);
  }
  return out;
}

namespace {

std::vector<FrontierPieces> frontier_per_domain(const SurfaceComplex& s, const DomainLabels& labels,
                                                const Subcomplex& excluded, const LocalEnds& ends) {
  std::vector<FrontierPieces> out;
  for (const auto& d : labels.domains) {
    std::vector<RelativeEnd> mine;
    for (const auto& e : ends.ends)
      if (e.domain == d.index) mine.push_back(e);
    out.push_back(frontier_components(s, d.region, &excluded, mine));
  }
  return out;
}

// K together with the boundary of S, the cells that become K* in S.
Subcomplex with_boundary(const SurfaceComplex& s, const Subcomplex& k) {
  std::vector<Edge> edges;
  for (EdgeId e : k.edges()) edges.push_back(s.edge(e));
  for (EdgeId e = 0; e < s.edge_count(); ++e)
    if (s.is_boundary_edge(e)) edges.push_back(s.edge(e));
  return Subcomplex::closure_of(s, k.faces(), edges, k.vertices());
}

}  // namespace

ResidualAnalysis analyze_residual(const SurfaceComplex& s, const Subcomplex& k) {
  ResidualAnalysis out;
  out.labels = residual_domains(s, k);
  out.ends = relatively_compact_ends(s, k, out.labels.face_domain);
  out.frontier = out.ends.augmented ? frontier_per_domain(s, out.labels, with_boundary(s, k), out.ends)
                                    : frontier_per_domain(s, out.labels, k, out.ends);
  return out;
}

namespace {

std::int32_t depth_of(const LayeredComplex& lc, const Subcomplex& k) {
  std::int32_t depth = 0;
  for (FaceId f : k.faces()) depth = std::max(depth, lc.face_layer[f]);
  for (EdgeId e : k.edges()) {
    std::int32_t best = lc.depth + 1;
    for (FaceId f : lc.complex.edge_faces(e)) best = std::min(best, lc.face_layer[f]);
    depth = std::max(depth, best);
  }
  for (VertexId v : k.vertices()) depth = std::max(depth, lc.vertex_layer(v));
  return depth;
}

}  // namespace

StreamResidual analyze_residual(const ExhaustionStream& stream, const CellSet& cells, std::int32_t horizon) {
  if (horizon < 1) throw Error(Error::Kind::InvalidArgument, "horizon must be at least 1");
  StreamResidual out;
  out.horizon = horizon;
  out.tree = end_tree(stream, horizon);
  out.universe = out.tree.universe;
  const auto& lc = *out.universe;
  const auto& s = lc.complex;
  out.k = make_subcomplex(s, cells);
  out.k_depth = depth_of(lc, out.k);
  if (out.k_depth > horizon) {
    throw_domain("K is not contained in F_" + std::to_string(horizon) + " (it first fits in F_" +
                 std::to_string(out.k_depth) + "); raise the horizon");
  }
  out.labels = residual_domains(s, out.k, &lc, horizon);
  std::int32_t open = 0;
  out.ends = collar_ends(s, out.k, out.labels.face_domain, &open);
  out.frontier = frontier_per_domain(s, out.labels, out.k, out.ends);
  out.stream_end_list = ends_of(out.tree, stream.info());
  out.stream_ends.resize(out.labels.domains.size());
  for (const auto& e : out.stream_end_list.ends) {
    const auto& leaf = out.tree.nodes[e.path.back()];
    out.stream_ends[out.labels.face_domain[leaf.faces.front()]].push_back(e.index);
  }
  out.qualifiers.push_back("at horizon " + std::to_string(horizon));
  if (open > 0) out.qualifiers.push_back("collar of K meets the ambient boundary");
  out.qualifiers.push_back("trusted: exhaustive producer");
  return out;
}

EndEmbedding embed_ends_after_deletion(const StreamResidual& r) {
  EndEmbedding out;
  out.k_depth = r.k_depth;
  const auto& lc = *r.universe;
  for (const auto& e : r.stream_end_list.ends) {
    // Beyond depth k_depth the branch avoids K and stays inside one domain.
    const auto& node = r.tree.nodes[e.path[r.k_depth]];
    const auto d = r.labels.face_domain[node.faces.front()];
    for (FaceId f : node.faces) {
      if (r.k.has_face(f) || lc.face_layer[f] <= r.k_depth || r.labels.face_domain[f] != d) out.injective = false;
    }
    out.image.push_back(static_cast<std::int32_t>(out.end_domain.size()));
    out.end_domain.push_back(d);
  }
  out.stream_end_count = static_cast<std::int32_t>(out.image.size());
  for (const auto& e : r.ends.ends) out.end_domain.push_back(e.domain);
  out.relatively_compact_count = static_cast<std::int32_t>(r.ends.ends.size());
  auto sorted = out.image;
  sort_unique(sorted);
  if (sorted.size() != out.image.size()) out.injective = false;
  return out;
}

EndEmbedding embed_ends_after_deletion(const ExhaustionStream& stream, const CellSet& k, std::int32_t horizon) {
  return embed_ends_after_deletion(analyze_residual(stream, k, horizon));
}

EndBound check_end_bound(const SurfaceComplex& s, const Subcomplex& k, std::int32_t domain) {
  auto labels = residual_domains(s, k);
  if (domain < 0 || domain >= static_cast<std::int32_t>(labels.domains.size())) {
    throw Error(Error::Kind::InvalidArgument, "no residual domain " + std::to_string(domain));
  }
  auto ends = relatively_compact_ends(s, k, labels.face_domain);
  EndBound out;
  out.augmented = ends.augmented;
  out.count = std::count_if(ends.ends.begin(), ends.ends.end(), [&](const RelativeEnd& e) { return e.domain == domain; });
  out.m = k.component_count(s);
  out.g = genus(s).value;
  if (ends.augmented) out.n = static_cast<std::int32_t>(boundary_components(s).size());
  out.bound = static_cast<std::int64_t>(out.m + out.n) * (out.g + 1);
  out.ok = out.count <= out.bound;
  return out;
}

C18Decision c18_decide(const SurfaceComplex& s, const Region& u, const LayeredComplex* layers, std::int32_t horizon) {
  C18Decision out;
  if (u.faces.empty()) {
    out.evidence = "region is empty";
    return out;
  }
  for (FaceId f : u.faces) {
    if (f < 0 || f >= s.face_count()) {
      throw Error(Error::Kind::InvalidArgument, "region face " + std::to_string(f) + " out of range");
    }
  }
  std::vector<std::int32_t> labels;
  auto mask = face_mask_of(s, u.faces);
  if (label_face_components(s, mask, {}, labels) != 1) {
    out.evidence = "region is not connected";
    return out;
  }
  out.witness = frontier_cells(s, u.faces);
  out.components = static_cast<std::int32_t>(cell_components(s, out.witness).size());
  if (layers) {
    for (VertexId v : out.witness.vertices)
      if (layers->vertex_layer(v) > horizon) out.beyond_horizon.vertices.push_back(v);
    for (EdgeId e : out.witness.edges) {
      auto ab = s.edge(e);
      if (layers->vertex_layer(ab.first) > horizon || layers->vertex_layer(ab.second) > horizon)
        out.beyond_horizon.edges.push_back(e);
    }
    if (!out.beyond_horizon.vertices.empty() || !out.beyond_horizon.edges.empty()) {
      out.evidence = "frontier reaches the truncation at horizon " + std::to_string(horizon) + " (" +
                     std::to_string(out.beyond_horizon.vertices.size()) +
                     " frontier vertices outside F_" + std::to_string(horizon) + "); not compact";
      return out;
    }
  }
  std::vector<Edge> edges;
  for (EdgeId e : out.witness.edges) edges.push_back(s.edge(e));
  auto k = Subcomplex::closure_of(s, {}, edges, out.witness.vertices);
  auto domains = residual_domains(s, k);
  const auto d = domains.face_domain[u.faces.front()];
  auto faces = u.faces;
  std::sort(faces.begin(), faces.end());
  if (d == kNone || domains.domains[d].region.faces != faces) {
    out.evidence = "region is not a whole component of the complement of its frontier";
    return out;
  }
  out.is_residual = true;
  out.evidence = "residual domain of its frontier (" + std::to_string(out.components) + " components)";
  return out;
}

}  // namespace surfends
