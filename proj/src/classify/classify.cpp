#include "surfends/classify/classify.hpp"

#include <algorithm>

#include "surfends/core/assembler.hpp"
#include "surfends/core/region.hpp"
#include "surfends/core/subdivide.hpp"
#include "surfends/exhaustion/end_tree.hpp"

namespace surfends {

std::string to_string(OrientabilityClass c) {
  switch (c) {
    case OrientabilityClass::Orientable: return "orientable";
    case OrientabilityClass::NonorientableOdd: return "nonorientable-odd";
    case OrientabilityClass::NonorientableEven: return "nonorientable-even";
    case OrientabilityClass::InfinitelyNonorientable: return "infinitely-nonorientable";
  }
  return "orientable";
}

OrientabilityClass orientability_class_from(const std::string& name) {
  for (auto c : {OrientabilityClass::Orientable, OrientabilityClass::NonorientableOdd,
                 OrientabilityClass::NonorientableEven, OrientabilityClass::InfinitelyNonorientable}) {
    if (to_string(c) == name) return c;
  }
  throw Error(Error::Kind::InvalidArgument, "unknown orientability class '" + name + "'");
}

std::string to_string(Homeomorphic h) {
  switch (h) {
    case Homeomorphic::Yes: return "yes";
    case Homeomorphic::No: return "no";
    default: return "undecided-at-horizon";
  }
}

bool Signature::same_invariants(const Signature& o) const {
  return orientability == o.orientability && genus == o.genus && boundary_circles == o.boundary_circles &&
         ends == o.ends && end_space == o.end_space;
}

namespace {

OrientabilityClass compact_class(bool orientable, std::int64_t crosscaps) {
  if (orientable) return OrientabilityClass::Orientable;
  return crosscaps % 2 ? OrientabilityClass::NonorientableOdd : OrientabilityClass::NonorientableEven;
}

}  // namespace

Signature signature(const SurfaceComplex& s) {
  auto g = genus(s);
  Signature sig;
  const bool orientable = g.orientability == Orientability::Orientable;
  sig.orientability = compact_class(orientable, g.value);
  sig.genus = g.value;
  sig.boundary_circles = static_cast<std::int64_t>(boundary_components(s).size());
  return sig;
}

Signature signature(const ExhaustionStream& stream, std::int32_t horizon) {
  if (horizon < 1) throw Error(Error::Kind::InvalidArgument, "horizon must be at least 1");
  auto tree = end_tree(stream, horizon);
  auto e = ends_of(tree, stream.info());
  const auto& lc = *tree.universe;
  auto fh = lc.faces_up_to(horizon);
  auto shape = region_shape(lc.complex, fh);
  if (!shape.connected) throw_domain("F_" + std::to_string(horizon) + " is not connected");

  Signature sig;
  sig.horizon = horizon;
  sig.ends = end_triple(e);
  if (sig.ends.nonorientable > 0) {
    sig.orientability = OrientabilityClass::InfinitelyNonorientable;
  } else {
    sig.orientability = compact_class(shape.orientable, shape.genus.euler_genus());
  }
  if (sig.ends.nonplanar == 0) sig.genus = shape.genus.value;
  sig.boundary_circles = static_cast<std::int64_t>(depth_boundary(lc, horizon).ambient.size());
  sig.exact = e.exact;
  sig.qualifiers = e.qualifiers;
  if (stream.info().declared_end_space) {
    sig.end_space = stream.info().declared_end_space;
    sig.exact = false;
    sig.qualifiers.push_back("end space declared by the producer: " + *sig.end_space);
  }
  return sig;
}

void check_consistent(const Signature& sig) {
  auto fail = [](const std::string& why) { throw Error(Error::Kind::InvalidArgument, "inconsistent signature: " + why); };
  const auto& t = sig.ends;
  if (t.ends < 0 || t.nonplanar < 0 || t.nonorientable < 0 || sig.boundary_circles < 0) fail("negative count");
  if (t.nonorientable > t.nonplanar || t.nonplanar > t.ends) fail("end counts must satisfy b'' <= b' <= b");
  if (sig.genus.has_value() != (t.nonplanar == 0)) fail("genus is infinite exactly when some end is nonplanar");
  if ((sig.orientability == OrientabilityClass::InfinitelyNonorientable) != (t.nonorientable > 0))
    fail("infinitely nonorientable exactly when some end is nonorientable");
  if (sig.genus) {
    const auto g = *sig.genus;
    if (g < 0) fail("negative genus");
    if (sig.orientability == OrientabilityClass::NonorientableOdd && g % 2 != 1) fail("odd type needs an odd crosscap number");
    if (sig.orientability == OrientabilityClass::NonorientableEven && (g == 0 || g % 2 != 0))
      fail("even type needs a positive even crosscap number");
  }
}

Comparison homeomorphic(const Signature& a, const Signature& b) {
  Comparison out;
  if (a.exact && b.exact) {
    if (a.orientability != b.orientability) out.reasons.push_back("orientability type differs");
    if (a.genus != b.genus) out.reasons.push_back("genus differs");
    if (a.boundary_circles != b.boundary_circles) out.reasons.push_back("boundary circle count differs");
    if (!(a.ends == b.ends)) out.reasons.push_back("end counts differ");
    out.answer = out.reasons.empty() ? Homeomorphic::Yes : Homeomorphic::No;
    return out;
  }
  // Invariants observed at a horizon only grow with the horizon, so they can
  // refute an exact signature but never confirm one.
  auto refute = [&](const Signature& exact, const Signature& seen) {
    if (seen.end_space) out.reasons.push_back("declared end space against a finite end space");
    if (exact.genus && !seen.genus) out.reasons.push_back("finite genus against a nonplanar end");
    if (exact.genus && seen.genus && *seen.genus > *exact.genus) out.reasons.push_back("genus already exceeds");
    if (exact.orientability == OrientabilityClass::Orientable && seen.orientability != OrientabilityClass::Orientable)
      out.reasons.push_back("orientable against nonorientable");
    if (seen.boundary_circles > exact.boundary_circles) out.reasons.push_back("boundary circles already exceed");
    if (seen.ends.ends > exact.ends.ends) out.reasons.push_back("branches already exceed the end count");
    if (seen.ends.nonorientable > exact.ends.nonorientable) out.reasons.push_back("nonorientable ends already exceed");
  };
  if (a.exact) refute(a, b);
  if (b.exact) refute(b, a);
  if (!out.reasons.empty()) {
    out.answer = Homeomorphic::No;
  } else {
    out.answer = Homeomorphic::Undecided;
    out.reasons.push_back("signature not exact at the horizon");
  }
  return out;
}

GeneratedModel generate_model(const Signature& sig) {
  check_consistent(sig);
  if (sig.end_space) throw Error(Error::Kind::InvalidArgument, "signature is not of finite type: " + *sig.end_space);
  GeneratedModel out;
  const bool orientable = sig.orientability == OrientabilityClass::Orientable;
  std::int32_t handles = 0, crosscaps = 0;
  if (sig.genus) {
    (orientable ? handles : crosscaps) = static_cast<std::int32_t>(*sig.genus);
  } else if (sig.orientability == OrientabilityClass::NonorientableOdd) {
    crosscaps = 1;
  } else if (sig.orientability == OrientabilityClass::NonorientableEven) {
    crosscaps = 2;
  }
  const auto boundary = static_cast<std::int32_t>(sig.boundary_circles);
  if (sig.ends.ends == 0) {
    out.surface = compact_model(handles, crosscaps, boundary);
    out.description = "compact model with " + std::to_string(handles) + " handles, " + std::to_string(crosscaps) +
                      " crosscaps, " + std::to_string(boundary) + " boundary circles";
    return out;
  }
  ModelSpec spec;
  spec.handles = handles;
  spec.crosscaps = crosscaps;
  spec.boundary = boundary;
  spec.ends = static_cast<std::int32_t>(sig.ends.ends);
  spec.crosscap_ends = static_cast<std::int32_t>(sig.ends.nonorientable);
  spec.handle_ends = static_cast<std::int32_t>(sig.ends.nonplanar - sig.ends.nonorientable);
  out.spec = spec;
  out.stream = model_stream(spec);
  out.description = "model stream with " + std::to_string(spec.ends) + " ends (" + std::to_string(spec.handle_ends) +
                    " accumulating handles, " + std::to_string(spec.crosscap_ends) + " accumulating crosscaps)";
  return out;
}

DoubleResult double_surface(const SurfaceComplex& s) {
  auto on_boundary = [](const SurfaceComplex& c) {
    std::vector<char> b(c.vertex_count(), 0);
    for (EdgeId e = 0; e < c.edge_count(); ++e)
      if (c.is_boundary_edge(e)) b[c.edge(e).first] = b[c.edge(e).second] = 1;
    return b;
  };
  // Copies glued along the boundary stay simplicial unless an interior edge
  // or a whole face already spans boundary vertices only.
  auto needs_subdivision = [&](const SurfaceComplex& c) {
    auto b = on_boundary(c);
    for (EdgeId e = 0; e < c.edge_count(); ++e)
      if (!c.is_boundary_edge(e) && b[c.edge(e).first] && b[c.edge(e).second]) return true;
    for (const auto& t : c.faces())
      if (b[t[0]] && b[t[1]] && b[t[2]]) return true;
    return false;
  };

  DoubleResult out;
  out.subdivided = needs_subdivision(s);
  out.base = out.subdivided ? barycentric_subdivision(s).complex : s;
  const auto& base = out.base;
  const auto border = on_boundary(base);
  const auto nv = base.vertex_count();

  out.mirror.assign(nv, kNone);
  for (VertexId v = 0; v < nv; ++v) {
    out.origin.push_back(v);
    out.copy.push_back(0);
    out.shared.push_back(border[v]);
  }
  VertexId next = nv;
  for (VertexId v = 0; v < nv; ++v) {
    if (border[v]) {
      out.mirror[v] = v;
      continue;
    }
    out.mirror[v] = next++;
    out.origin.push_back(v);
    out.copy.push_back(1);
    out.shared.push_back(0);
  }

  auto orientation = orient(base);
  std::vector<Triangle> faces;
  faces.reserve(2 * static_cast<std::size_t>(base.face_count()));
  for (FaceId f = 0; f < base.face_count(); ++f) {
    Triangle t = base.face(f);
    if (orientation.orientable && orientation.face_sign[f] < 0) std::swap(t[1], t[2]);
    faces.push_back(t);
  }
  for (FaceId f = 0; f < base.face_count(); ++f) {
    Triangle t = faces[f];
    faces.push_back({out.mirror[t[0]], out.mirror[t[2]], out.mirror[t[1]]});
  }
  out.complex = SurfaceComplex(next, std::move(faces));
  return out;
}

}  // namespace surfends
