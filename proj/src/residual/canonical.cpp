#include "surfends/residual/canonical.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "surfends/core/subdivide.hpp"
#include "surfends/exhaustion/end_tree.hpp"

namespace surfends {

namespace {

// Ambient data the construction needs, independent of finite or stream input.
struct Setting {
  const SurfaceComplex* s = nullptr;
  const Subcomplex* k = nullptr;
  std::vector<char> in_u;              // per ambient face
  std::vector<std::int32_t> layer;     // per ambient face; all 0 when finite
  std::int32_t n0 = 0;
  std::int32_t rounds = 1;
  const EndTree* tree = nullptr;       // streams only
};

// Ambient cell carrying a vertex of the second subdivision.
Carrier ambient_carrier(const Subdivision& sd1, const Subdivision& sd2, VertexId x) {
  const Carrier c = sd2.vertex_carrier[x];
  const auto& mid = sd1.complex;
  if (c.dim == 0) return sd1.vertex_carrier[c.id];
  if (c.dim == 1) {
    const auto e = mid.edge(c.id);
    const VertexId vs[2] = {e.first, e.second};
    return sd1.carrier_of(vs);
  }
  const auto& t = mid.face(c.id);
  return sd1.carrier_of(t);
}

std::uint64_t pair_key(VertexId a, VertexId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

std::vector<std::vector<EdgeId>> edge_cycles(const SurfaceComplex& t, const std::vector<EdgeId>& edges) {
  auto pieces = cell_components(t, FrontierCells{{}, edges});
  std::vector<std::vector<EdgeId>> out;
  for (auto& p : pieces) out.push_back(std::move(p.edges));
  return out;
}

void add_check(CanonicalExhaustion& c, const std::string& name, bool ok, const std::string& detail = {}) {
  c.checks.push_back({name, ok, detail});
}

void build(CanonicalExhaustion& out, const Setting& in) {
  const auto& s = *in.s;
  auto sd1 = barycentric_subdivision(s);
  auto k1 = subdivide_subcomplex(sd1, s, *in.k);
  auto sd2 = barycentric_subdivision(sd1.complex);
  auto k2 = subdivide_subcomplex(sd2, sd1.complex, k1);
  const auto& s2 = sd2.complex;

  std::vector<Triangle> faces(s2.faces().begin(), s2.faces().end());
  std::vector<char> vk(s2.vertex_count(), 0);
  for (VertexId v : k2.vertices()) vk[v] = 1;
  auto& parent = out.face_parent;
  auto& layer = out.face_layer;
  auto& e_index = out.e_index;
  for (FaceId f = 0; f < s2.face_count(); ++f) {
    const FaceId p = sd1.face_parent[sd2.face_parent[f]];
    parent.push_back(p);
    layer.push_back(in.layer[p]);
    if (!in.in_u[p]) {
      e_index.push_back(kNone);
    } else if (in.layer[p] > in.n0) {
      e_index.push_back(0);
    } else {
      const auto& t = faces[f];
      e_index.push_back(vk[t[0]] || vk[t[1]] || vk[t[2]] ? CanonicalExhaustion::kCollar : 1);
    }
  }

  // Rounds of collar refinement; ring faces of round r enter E_{r+1}.
  VertexId next_vertex = s2.vertex_count();
  for (std::int32_t r = 1; r <= in.rounds; ++r) {
    std::unordered_map<std::uint64_t, VertexId> mid;
    auto midpoint = [&](VertexId a, VertexId b) {
      auto [it, fresh] = mid.try_emplace(pair_key(a, b), next_vertex);
      if (fresh) {
        ++next_vertex;
        vk.push_back(0);
      }
      return it->second;
    };
    const auto count = faces.size();
    for (std::size_t f = 0; f < count; ++f) {
      if (e_index[f] != CanonicalExhaustion::kCollar) continue;
      Triangle t = faces[f];
      const int nk = vk[t[0]] + vk[t[1]] + vk[t[2]];
      auto emit = [&](Triangle x, std::int32_t idx) {
        faces.push_back(x);
        parent.push_back(parent[f]);
        layer.push_back(layer[f]);
        e_index.push_back(idx);
      };
      if (nk == 1) {
        while (!vk[t[0]]) std::rotate(t.begin(), t.begin() + 1, t.end());
        const VertexId k = t[0], a = t[1], b = t[2];
        const VertexId ma = midpoint(k, a), mb = midpoint(k, b);
        faces[f] = {k, ma, mb};
        emit({ma, a, b}, r + 1);
        emit({ma, b, mb}, r + 1);
      } else {
        while (vk[t[2]]) std::rotate(t.begin(), t.begin() + 1, t.end());
        const VertexId k1 = t[0], k2 = t[1], a = t[2];
        const VertexId m1 = midpoint(k1, a), m2 = midpoint(k2, a);
        faces[f] = {k1, k2, m2};
        emit({k1, m2, m1}, CanonicalExhaustion::kCollar);
        emit({m1, m2, a}, r + 1);
      }
    }
  }

  out.complex = SurfaceComplex(next_vertex, faces);
  const auto& t = out.complex;
  {
    std::vector<VertexId> kv;
    std::vector<Edge> ke;
    std::vector<FaceId> kf;
    for (VertexId v = 0; v < t.vertex_count(); ++v)
      if (vk[v]) kv.push_back(v);
    for (EdgeId e = 0; e < t.edge_count(); ++e)
      if (vk[t.edge(e).first] && vk[t.edge(e).second]) ke.push_back(t.edge(e));
    for (FaceId f = 0; f < t.face_count(); ++f) {
      const auto& x = t.face(f);
      if (vk[x[0]] && vk[x[1]] && vk[x[2]]) kf.push_back(f);
    }
    out.k = Subcomplex::closure_of(t, kf, ke, kv);
  }
  std::vector<char> blocked(t.edge_count(), 0);
  for (EdgeId e : out.k.edges()) blocked[e] = 1;

  const auto nf = t.face_count();
  std::vector<char> minus(nf, 0), plus(nf, 0);
  for (FaceId f = 0; f < nf; ++f) {
    if (e_index[f] == kNone) continue;
    if (e_index[f] == 0) {
      plus[f] = 1;
      out.u_plus.push_back(f);
    } else {
      minus[f] = 1;
      out.u_minus.push_back(f);
    }
  }

  // xi and the components of U_+.
  std::vector<EdgeId> xi_edges;
  for (EdgeId e = 0; e < t.edge_count(); ++e) {
    auto fs = t.edge_faces(e);
    if (fs.size() == 2 && ((minus[fs[0]] && plus[fs[1]]) || (plus[fs[0]] && minus[fs[1]]))) xi_edges.push_back(e);
  }
  out.xi = edge_cycles(t, xi_edges);
  std::vector<std::int32_t> plus_label;
  out.u_plus_components = label_face_components(t, plus, blocked, plus_label);
  std::vector<std::int32_t> per_component(out.u_plus_components, 0);
  for (const auto& cycle : out.xi) {
    auto fs = t.edge_faces(cycle.front());
    const FaceId pf = plus[fs[0]] ? fs[0] : fs[1];
    out.xi_component.push_back(plus_label[pf]);
    ++per_component[plus_label[pf]];
  }

  std::vector<std::int32_t> labels;
  const auto minus_count = label_face_components(t, minus, blocked, labels);
  add_check(out, "U- connected", minus_count == 1, std::to_string(minus_count) + " components");
  {
    bool ok = std::all_of(per_component.begin(), per_component.end(), [](std::int32_t c) { return c == 1; });
    add_check(out, "one xi cycle per U+ component", ok,
              std::to_string(out.u_plus_components) + " components, " + std::to_string(out.xi.size()) + " cycles");
  }

  const auto n_max = out.rounds;
  std::vector<std::vector<char>> g(n_max + 2);
  for (std::int32_t n = 1; n <= n_max + 1; ++n) g[n] = out.g_mask(n);

  for (std::int32_t n = 1; n <= n_max; ++n) {
    const auto tag = " n=" + std::to_string(n);
    const auto count = label_face_components(t, g[n], blocked, labels);
    add_check(out, "G_n connected" + tag, count == 1, std::to_string(count) + " components");

    if (n < n_max) {
      bool inside = true;
      for (FaceId f = 0; f < nf && inside; ++f) {
        if (!g[n][f]) continue;
        for (VertexId v : t.face(f))
          for (FaceId h : t.vertex_faces(v))
            if (!g[n + 1][h]) inside = false;
      }
      add_check(out, "G_n in int G_n+1" + tag, inside);
    }

    // Components of U - G_n lie on one side; those in U_+ follow the
    // complement components of F_{n0+n}.
    std::vector<char> rest(nf, 0);
    for (FaceId f = 0; f < nf; ++f) rest[f] = (minus[f] || plus[f]) && !g[n][f];
    const auto rc = label_face_components(t, rest, blocked, labels);
    std::vector<std::int32_t> side(rc, kNone), node(rc, kNone);
    bool pure = true, matches = true;
    std::map<std::int32_t, std::int32_t> node_owner;
    for (FaceId f = 0; f < nf; ++f) {
      if (!rest[f]) continue;
      const auto c = labels[f];
      const std::int32_t sd = plus[f] ? 1 : 0;
      if (side[c] == kNone) side[c] = sd;
      else if (side[c] != sd) pure = false;
      if (sd == 1 && in.tree) {
        const auto nd = in.tree->node_of(in.n0 + n, parent[f]);
        if (node[c] == kNone) node[c] = nd;
        else if (node[c] != nd) matches = false;
        auto [it, fresh] = node_owner.try_emplace(nd, c);
        if (!fresh && it->second != c) matches = false;
      }
    }
    add_check(out, "U - G_n components one-sided" + tag, pure);
    if (in.tree) add_check(out, "U+ part of U - G_n matches complement of F_n0+n" + tag, matches);
  }

  // Innermost collar: one component per relatively compact end.
  std::vector<char> collar(nf, 0);
  for (FaceId f = 0; f < nf; ++f) collar[f] = e_index[f] == CanonicalExhaustion::kCollar;
  const auto cc = label_face_components(t, collar, blocked, labels);
  std::vector<std::vector<FaceId>> comp(cc);
  for (FaceId f = 0; f < nf; ++f)
    if (collar[f]) comp[labels[f]].push_back(f);
  bool disk_like = true;
  for (auto& faces_c : comp) {
    CollarEnd ce;
    ce.faces = faces_c;
    std::set<VertexId> iv;
    std::set<EdgeId> ie;
    for (FaceId f : faces_c)
      for (VertexId v : t.face(f)) {
        if (!vk[v]) continue;
        auto c = ambient_carrier(sd1, sd2, v);
        if (c.dim == 0) iv.insert(c.id);
        else if (c.dim == 1) ie.insert(c.id);
      }
    ce.impression = {{iv.begin(), iv.end()}, {ie.begin(), ie.end()}};
    ce.regular = !ie.empty() || iv.size() > 1;
    std::vector<VertexId> origin;
    auto closure = region_complex(t, faces_c, blocked, &origin);
    for (const auto& cyc : boundary_components(closure)) {
      bool touches = std::any_of(cyc.vertices.begin(), cyc.vertices.end(), [&](VertexId v) { return vk[origin[v]]; });
      if (!touches) ++ce.free_cycles;
    }
    ce.orientable = orient(closure).orientable;
    ce.open_euler = open_euler_characteristic(t, faces_c, &out.k);
    if (ce.free_cycles != 1 || !ce.orientable || ce.open_euler != 0) disk_like = false;
    out.collar_ends.push_back(std::move(ce));
  }
  std::sort(out.collar_ends.begin(), out.collar_ends.end(),
            [](const CollarEnd& a, const CollarEnd& b) { return a.faces.front() < b.faces.front(); });
  add_check(out, "collar components are punctured-disk neighbourhoods", disk_like,
            std::to_string(out.collar_ends.size()) + " relatively compact ends");
}

}  // namespace

std::vector<char> CanonicalExhaustion::g_mask(std::int32_t n) const {
  std::vector<char> m(e_index.size(), 0);
  for (std::size_t f = 0; f < e_index.size(); ++f) {
    const auto e = e_index[f];
    if (e == kNone || e == kCollar) continue;
    if (e == 0) m[f] = face_layer[f] <= n0 + n;
    else m[f] = e <= n;
  }
  return m;
}

bool CanonicalExhaustion::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CanonicalCheck& c) { return c.ok; });
}

CanonicalExhaustion canonical_exhaustion(const SurfaceComplex& s, const Subcomplex& k, std::int32_t domain,
                                         std::int32_t rounds) {
  if (rounds < 1) throw Error(Error::Kind::InvalidArgument, "at least one round is required");
  auto labels = residual_domains(s, k);
  if (domain < 0 || domain >= static_cast<std::int32_t>(labels.domains.size()))
    throw Error(Error::Kind::InvalidArgument, "no residual domain " + std::to_string(domain));
  CanonicalExhaustion out;
  out.finite = true;
  out.horizon = rounds;
  out.rounds = rounds;
  out.domain = domain;
  out.f0_faces = s.face_count();
  Setting in;
  in.s = &s;
  in.k = &k;
  in.in_u.assign(s.face_count(), 0);
  for (FaceId f : labels.domains[domain].region.faces) in.in_u[f] = 1;
  in.layer.assign(s.face_count(), 0);
  in.n0 = 0;
  in.rounds = rounds + 1;
  build(out, in);

  auto ends = relatively_compact_ends(s, k, labels.face_domain);
  auto expected = std::count_if(ends.ends.begin(), ends.ends.end(), [&](const RelativeEnd& e) { return e.domain == domain; });
  if (ends.augmented) {
    out.qualifiers.push_back("K meets the boundary; collar ends are counted in S, relatively compact ends in S*");
  } else {
    add_check(out, "collar ends match relatively compact ends",
              static_cast<std::int64_t>(out.collar_ends.size()) == expected);
  }
  return out;
}

CanonicalExhaustion canonical_exhaustion(const ExhaustionStream& stream, const CellSet& cells, std::int32_t domain,
                                         std::int32_t horizon) {
  auto r = analyze_residual(stream, cells, horizon);
  if (domain < 0 || domain >= static_cast<std::int32_t>(r.labels.domains.size()))
    throw Error(Error::Kind::InvalidArgument, "no residual domain " + std::to_string(domain));
  const auto& lc = *r.universe;
  const auto& s = lc.complex;

  // Smallest n with K and every bounded domain inside int F_n.
  auto star_depth = [&](VertexId v) {
    std::int32_t d = 0;
    for (FaceId f : s.vertex_faces(v)) d = std::max(d, lc.face_layer[f]);
    return d;
  };
  std::int32_t n_min = 1;
  for (VertexId v : r.k.vertices()) n_min = std::max(n_min, star_depth(v));
  for (const auto& d : r.labels.domains) {
    if (!d.bounded) continue;
    for (FaceId f : d.region.faces)
      for (VertexId v : s.face(f)) n_min = std::max(n_min, star_depth(v));
  }

  std::vector<char> in_u(s.face_count(), 0);
  for (FaceId f : r.labels.domains[domain].region.faces) in_u[f] = 1;
  std::vector<char> blocked(s.edge_count(), 0);
  for (EdgeId e : r.k.edges()) blocked[e] = 1;

  // Raise n0 until U_- is connected and each U_+ component meets one xi cycle.
  std::int32_t n0 = kNone;
  for (std::int32_t n = n_min; n <= horizon - 1 && n0 == kNone; ++n) {
    std::vector<char> minus(s.face_count(), 0), plus(s.face_count(), 0);
    for (FaceId f = 0; f < s.face_count(); ++f) {
      if (!in_u[f]) continue;
      (lc.face_layer[f] <= n ? minus : plus)[f] = 1;
    }
    std::vector<std::int32_t> lm, lp;
    if (label_face_components(s, minus, blocked, lm) != 1) continue;
    const auto pc = label_face_components(s, plus, blocked, lp);
    std::vector<EdgeId> xi;
    for (EdgeId e = 0; e < s.edge_count(); ++e) {
      auto fs = s.edge_faces(e);
      if (fs.size() == 2 && ((minus[fs[0]] && plus[fs[1]]) || (plus[fs[0]] && minus[fs[1]]))) xi.push_back(e);
    }
    std::vector<std::int32_t> per(pc, 0);
    for (const auto& cyc : edge_cycles(s, xi)) {
      auto fs = s.edge_faces(cyc.front());
      ++per[lp[plus[fs[0]] ? fs[0] : fs[1]]];
    }
    if (std::all_of(per.begin(), per.end(), [](std::int32_t c) { return c == 1; })) n0 = n;
  }
  if (n0 == kNone) {
    throw_domain("horizon " + std::to_string(horizon) + " too shallow: F_0 needs depth at least " +
                 std::to_string(n_min) + " and one more layer beyond it");
  }

  CanonicalExhaustion out;
  out.horizon = horizon;
  out.n0 = n0;
  out.rounds = horizon - n0;
  out.domain = domain;
  for (auto l : lc.face_layer) out.f0_faces += l <= n0;
  Setting in;
  in.s = &s;
  in.k = &r.k;
  in.in_u = std::move(in_u);
  in.layer = lc.face_layer;
  in.n0 = n0;
  in.rounds = out.rounds + 1;
  in.tree = &r.tree;
  build(out, in);

  // Branches of U at the horizon, recounted on the refined complex.
  {
    const auto& t = out.complex;
    std::vector<char> far(t.face_count(), 0), blocked_t(t.edge_count(), 0);
    for (FaceId f = 0; f < t.face_count(); ++f) far[f] = out.e_index[f] == 0 && out.face_layer[f] > horizon;
    for (EdgeId e : out.k.edges()) blocked_t[e] = 1;
    std::vector<std::int32_t> labels;
    out.stream_leaves = label_face_components(t, far, blocked_t, labels);
  }
  add_check(out, "U+ branches match stream ends in U",
            out.stream_leaves == static_cast<std::int32_t>(r.stream_ends[domain].size()));
  auto expected = std::count_if(r.ends.ends.begin(), r.ends.ends.end(),
                                [&](const RelativeEnd& e) { return e.domain == domain; });
  add_check(out, "collar ends match relatively compact ends",
            static_cast<std::int64_t>(out.collar_ends.size()) == expected);
  out.qualifiers = r.qualifiers;
  return out;
}

}  // namespace surfends
