#include "surfends/dynamics/dynamics.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace surfends {

namespace {

std::map<std::array<VertexId, 3>, FaceId> face_index(const SurfaceComplex& s) {
  std::map<std::array<VertexId, 3>, FaceId> out;
  for (FaceId f = 0; f < s.face_count(); ++f) {
    auto t = s.face(f);
    std::sort(t.begin(), t.end());
    out.emplace(t, f);
  }
  return out;
}

}  // namespace

Carrier SimplicialAutomorphism::apply(const SurfaceComplex& s, Carrier c) const {
  switch (c.dim) {
    case 0: return {0, vertex_map[c.id]};
    case 1: {
      auto [a, b] = s.edge(c.id);
      const VertexId fa = vertex_map[a], fb = vertex_map[b];
      if (fa == kNone || fb == kNone) return {1, kNone};
      auto e = s.find_edge(fa, fb);
      return {1, e ? *e : kNone};
    }
    default: return {2, face_map[c.id]};
  }
}

SimplicialAutomorphism make_automorphism(const SurfaceComplex& s, std::vector<VertexId> vertex_map,
                                         const std::optional<std::vector<FaceId>>& domain, std::string name) {
  const auto nv = s.vertex_count();
  if (static_cast<std::int32_t>(vertex_map.size()) != nv) {
    throw Error(Error::Kind::InvalidArgument, "vertex map has " + std::to_string(vertex_map.size()) +
                                                  " entries for " + std::to_string(nv) + " vertices");
  }
  std::vector<char> hit(nv, 0);
  for (VertexId v = 0; v < nv; ++v) {
    const auto w = vertex_map[v];
    if (w == kNone && domain) continue;
    if (w < 0 || w >= nv) throw_domain("vertex map sends " + std::to_string(v) + " outside the complex");
    if (hit[w]) throw_domain("vertex map is not injective at " + std::to_string(w));
    hit[w] = 1;
  }
  SimplicialAutomorphism f;
  f.name = std::move(name);
  f.partial = domain.has_value();
  f.face_map.assign(s.face_count(), kNone);
  std::vector<FaceId> faces;
  if (domain) {
    faces = *domain;
  } else {
    faces.resize(s.face_count());
    std::iota(faces.begin(), faces.end(), 0);
  }
  const auto index = face_index(s);
  std::vector<char> taken(s.face_count(), 0);
  for (FaceId face : faces) {
    if (face < 0 || face >= s.face_count()) throw Error(Error::Kind::InvalidArgument, "map domain face out of range");
    std::array<VertexId, 3> t;
    for (int i = 0; i < 3; ++i) {
      t[i] = vertex_map[s.face(face)[i]];
      if (t[i] == kNone) throw_domain("vertex map undefined on face " + std::to_string(face));
    }
    std::sort(t.begin(), t.end());
    auto it = index.find(t);
    if (it == index.end()) throw_domain("face " + std::to_string(face) + " is not sent to a face");
    if (taken[it->second]) throw_domain("two faces share the image face " + std::to_string(it->second));
    taken[it->second] = 1;
    f.face_map[face] = it->second;
  }
  f.vertex_map = std::move(vertex_map);
  return f;
}

SimplicialAutomorphism identity_automorphism(const SurfaceComplex& s) {
  std::vector<VertexId> id(s.vertex_count());
  std::iota(id.begin(), id.end(), 0);
  return make_automorphism(s, std::move(id), std::nullopt, "identity");
}

SimplicialAutomorphism compose(const SurfaceComplex& s, const SimplicialAutomorphism& f,
                               const SimplicialAutomorphism& g) {
  std::vector<VertexId> map(s.vertex_count(), kNone);
  for (VertexId v = 0; v < s.vertex_count(); ++v) {
    const auto w = g.vertex_map[v];
    if (w != kNone) map[v] = f.vertex_map[w];
  }
  if (!f.partial && !g.partial) return make_automorphism(s, std::move(map), std::nullopt, f.name + "*" + g.name);
  std::vector<FaceId> domain;
  for (FaceId x = 0; x < s.face_count(); ++x)
    if (g.face_map[x] != kNone && f.face_map[g.face_map[x]] != kNone) domain.push_back(x);
  return make_automorphism(s, std::move(map), domain, f.name + "*" + g.name);
}

SimplicialAutomorphism power(const SurfaceComplex& s, const SimplicialAutomorphism& f, std::int32_t n) {
  if (n < 0) throw Error(Error::Kind::InvalidArgument, "negative power");
  auto out = identity_automorphism(s);
  for (std::int32_t i = 0; i < n; ++i) out = compose(s, f, out);
  return out;
}

InvarianceCertificate check_invariance(const SurfaceComplex& s, const SimplicialAutomorphism& f, const Subcomplex& k) {
  InvarianceCertificate c;
  auto fail = [&](const std::string& why) {
    if (c.ok) c.detail = why;
    c.ok = false;
  };
  for (VertexId v : k.vertices()) {
    for (FaceId x : s.vertex_faces(v))
      if (!f.defined_on(x)) fail("closed star of K leaves the domain of the map at face " + std::to_string(x));
    const auto w = f.vertex_map[v];
    if (w == kNone || !k.has_vertex(w)) fail("vertex " + std::to_string(v) + " of K leaves K");
  }
  for (EdgeId e : k.edges()) {
    auto img = f.apply(s, {1, e});
    if (img.id == kNone || !k.has_edge(img.id)) fail("edge " + std::to_string(e) + " of K leaves K");
  }
  for (FaceId x : k.faces()) {
    auto img = f.face_map[x];
    if (img == kNone || !k.has_face(img)) fail("face " + std::to_string(x) + " of K leaves K");
  }
  return c;
}

namespace {

DomainPermutation domain_map(const SurfaceComplex& s, const SimplicialAutomorphism& f, const DomainLabels& labels,
                             const LayeredComplex* layers, std::int32_t horizon) {
  DomainPermutation out;
  const auto n = labels.domains.size();
  out.image.assign(n, kNone);
  std::vector<std::int64_t> image_count(n, 0);
  for (const auto& d : labels.domains) {
    out.face_counts.push_back(static_cast<std::int64_t>(d.region.faces.size()));
    std::int64_t defined = 0;
    for (FaceId x : d.region.faces) {
      const auto y = f.face_map[x];
      if (y == kNone) continue;
      ++defined;
      const auto target = labels.face_domain[y];
      if (out.image[d.index] == kNone) out.image[d.index] = target;
      else if (out.image[d.index] != target) throw_domain("a residual domain is split by the map");
    }
    if (out.image[d.index] != kNone) {
      image_count[out.image[d.index]] += defined;
      // Measure: with a total map the image domain has exactly as many faces.
      if (!f.partial && defined != static_cast<std::int64_t>(labels.domains[out.image[d.index]].region.faces.size()))
        out.measure_preserved = false;
      if (layers && labels.domains[d.index].bounded != labels.domains[out.image[d.index]].bounded)
        out.bounded_preserved = false;
    }
  }
  (void)s;
  (void)horizon;
  return out;
}

void mark_injective(const std::vector<std::int32_t>& image, bool& injective) {
  std::vector<std::int32_t> seen;
  for (auto x : image)
    if (x != kNone) seen.push_back(x);
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) injective = false;
}

EndPermutation end_map(const SurfaceComplex& s, const SimplicialAutomorphism& f, const LocalEnds& local,
                       const DomainPermutation* domains) {
  EndPermutation out;
  out.ends = local.ends;
  std::map<std::array<Carrier, 3>, std::int32_t> owner;
  for (const auto& e : out.ends)
    for (const auto& t : e.collar_triangles) owner.emplace(t, e.index);

  for (const auto& e : out.ends) {
    std::int32_t target = kNone;
    bool excluded = false;
    for (const auto& t : e.collar_triangles) {
      std::array<Carrier, 3> img;
      for (int i = 0; i < 3; ++i) img[i] = f.apply(s, t[i]);
      if (std::any_of(img.begin(), img.end(), [](const Carrier& c) { return c.id == kNone; })) {
        excluded = true;
        break;
      }
      std::sort(img.begin(), img.end());
      auto it = owner.find(img);
      const auto here = it == owner.end() ? kNone : it->second;
      if (here == kNone || (target != kNone && here != target)) out.well_defined = false;
      if (target == kNone) target = here;
    }
    if (excluded) {
      out.image.push_back(kNone);
      out.excluded.push_back(e.index);
      continue;
    }
    out.image.push_back(target);
    if (target == kNone) continue;
    // Naturality on impressions.
    FrontierCells moved;
    for (VertexId v : e.impression.vertices) moved.vertices.push_back(f.vertex_map[v]);
    for (EdgeId x : e.impression.edges) moved.edges.push_back(f.apply(s, {1, x}).id);
    std::sort(moved.vertices.begin(), moved.vertices.end());
    std::sort(moved.edges.begin(), moved.edges.end());
    if (!(moved == out.ends[target].impression)) out.natural = false;
    if (domains && e.domain != kNone && domains->image[e.domain] != out.ends[target].domain)
      out.commutes_with_domains = false;
  }
  mark_injective(out.image, out.injective);
  return out;
}

EndDynamics run(const SurfaceComplex& s, const SimplicialAutomorphism& f, const Subcomplex& k, bool stream,
                const LayeredComplex* layers, std::int32_t horizon) {
  EndDynamics out;
  out.certificate = check_invariance(s, f, k);
  if (!out.certificate.ok) throw_domain("map does not preserve K: " + out.certificate.detail);
  out.labels = residual_domains(s, k, layers, horizon);
  out.domains = domain_map(s, f, out.labels, layers, horizon);
  auto local = stream ? collar_ends(s, k, out.labels.face_domain) : relatively_compact_ends(s, k, out.labels.face_domain);
  if (local.augmented) out.qualifiers.push_back("K meets the boundary; ends taken in S*");
  out.ends = end_map(s, f, local, &out.domains);
  out.p51 = orbit_table(out.ends.image);
  if (!out.ends.injective || !out.ends.well_defined) out.p51.all_periodic = false;
  if (!out.ends.excluded.empty())
    out.qualifiers.push_back(std::to_string(out.ends.excluded.size()) + " ends outside the domain of the map");
  return out;
}

}  // namespace

DomainPermutation induced_domain_map(const SurfaceComplex& s, const SimplicialAutomorphism& f, const Subcomplex& k,
                                     const LayeredComplex* layers, std::int32_t horizon) {
  auto cert = check_invariance(s, f, k);
  if (!cert.ok) throw_domain("map does not preserve K: " + cert.detail);
  return domain_map(s, f, residual_domains(s, k, layers, horizon), layers, horizon);
}

EndPermutation induced_end_map(const SurfaceComplex& s, const SimplicialAutomorphism& f, const Subcomplex& k) {
  return run(s, f, k, false, nullptr, 0).ends;
}

P51Report orbit_table(std::span<const std::int32_t> perm) {
  P51Report out;
  const auto n = static_cast<std::int32_t>(perm.size());
  std::vector<char> seen(n, 0);
  for (std::int32_t start = 0; start < n; ++start) {
    if (seen[start] || perm[start] == kNone) continue;
    std::vector<std::int32_t> orbit;
    std::int32_t x = start;
    // Follow the forward orbit; it is periodic iff it returns to start.
    while (x != kNone && !seen[x]) {
      seen[x] = 1;
      orbit.push_back(x);
      x = perm[x];
    }
    if (x != start) out.all_periodic = false;
    out.orbit_lengths.push_back(static_cast<std::int32_t>(orbit.size()));
    out.period = std::lcm(out.period, static_cast<std::int64_t>(orbit.size()));
    out.orbits.push_back(std::move(orbit));
  }
  return out;
}

EndDynamics verify_p51(const SurfaceComplex& s, const SimplicialAutomorphism& f, const Subcomplex& k) {
  return run(s, f, k, false, nullptr, 0);
}

EndDynamics verify_p51(const ExhaustionStream& stream, const std::string& symmetry, const CellSet& cells,
                       std::int32_t horizon) {
  if (horizon < 1) throw Error(Error::Kind::InvalidArgument, "horizon must be at least 1");
  auto lc = stream.materialize(horizon + 1);
  const DeclaredSymmetry* sym = nullptr;
  auto declared = stream.symmetries(horizon + 1);
  for (const auto& d : declared)
    if (d.name == symmetry) sym = &d;
  if (!sym) {
    throw Error(Error::Kind::InvalidArgument, "stream '" + stream.info().name + "' declares no symmetry '" + symmetry + "'");
  }
  if (sym->shift != 0) throw_domain("symmetries shifting the exhaustion are not supported");
  const auto& s = lc->complex;
  std::optional<std::vector<FaceId>> domain;
  if (std::find(sym->vertex_map.begin(), sym->vertex_map.end(), kNone) != sym->vertex_map.end()) {
    domain.emplace();
    for (FaceId x = 0; x < s.face_count(); ++x) {
      const auto& t = s.face(x);
      if (sym->vertex_map[t[0]] != kNone && sym->vertex_map[t[1]] != kNone && sym->vertex_map[t[2]] != kNone)
        domain->push_back(x);
    }
  }
  auto f = make_automorphism(s, sym->vertex_map, domain, sym->name);
  auto k = make_subcomplex(s, cells);
  std::int32_t depth = 0;
  for (VertexId v : k.vertices()) depth = std::max(depth, lc->vertex_layer(v));
  if (depth > horizon) throw_domain("K is not contained in F_" + std::to_string(horizon));
  auto out = run(s, f, k, true, lc.get(), horizon);
  out.qualifiers.push_back("at horizon " + std::to_string(horizon));
  out.qualifiers.push_back("declared symmetry " + sym->name + " of order " + std::to_string(sym->order));
  return out;
}

SimplicialAutomorphism double_map(const SurfaceComplex& s, const DoubleResult& d, const SimplicialAutomorphism& f) {
  if (f.partial) throw Error(Error::Kind::InvalidArgument, "only total maps can be doubled");
  std::vector<VertexId> base_map(d.base.vertex_count());
  if (!d.subdivided) {
    base_map = f.vertex_map;
  } else {
    // Vertices of the subdivision are numbered vertices, then edges, then faces.
    const auto nv = s.vertex_count(), ne = s.edge_count();
    for (VertexId v = 0; v < nv; ++v) base_map[v] = f.vertex_map[v];
    for (EdgeId e = 0; e < ne; ++e) base_map[nv + e] = nv + f.apply(s, {1, e}).id;
    for (FaceId x = 0; x < s.face_count(); ++x) base_map[nv + ne + x] = nv + ne + f.face_map[x];
  }
  std::vector<VertexId> map(d.complex.vertex_count());
  for (VertexId v = 0; v < d.complex.vertex_count(); ++v) {
    const auto img = base_map[d.origin[v]];
    map[v] = d.copy[v] == 0 ? img : d.mirror[img];
  }
  return make_automorphism(d.complex, std::move(map), std::nullopt, f.name + " doubled");
}

}  // namespace surfends
