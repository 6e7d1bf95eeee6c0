#include <sstream>

#include "surfends/io/io.hpp"

namespace surfends::io {

namespace {

Json optional_depth(std::int32_t d) { return d == kNone ? Json(nullptr) : Json(d); }

Json cells_to_json(const SurfaceComplex& s, const FrontierCells& z) {
  Json edges = Json::array();
  for (EdgeId e : z.edges) edges.push_back({s.edge(e).first, s.edge(e).second});
  return Json{{"vertices", z.vertices}, {"edges", std::move(edges)}};
}

Json relative_end_to_json(const SurfaceComplex& s, const RelativeEnd& e) {
  return Json{{"index", e.index},
              {"domain", e.domain},
              {"impression", cells_to_json(s, e.impression)},
              {"regular", e.regular},
              {"collar_faces", e.collar_faces.size()}};
}

Json domain_to_json(const SurfaceComplex& s, const ResidualDomain& d) {
  return Json{{"index", d.index},
              {"faces", d.region.faces.size()},
              {"smallest_face", d.region.faces.empty() ? Json(nullptr) : Json(d.region.faces.front())},
              {"bounded", d.bounded},
              {"frontier", cells_to_json(s, d.frontier)}};
}

void flatten(const Json& j, const std::string& path, std::ostringstream& out) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [key, value] : j.items()) flatten(value, path.empty() ? key : path + "." + key, out);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

Json validation_to_json(const ValidationReport& r) {
  Json issues = Json::array();
  for (const auto& i : r.issues) issues.push_back({{"code", i.code}, {"message", i.message}, {"cells", i.cells}});
  return Json{{"valid", r.valid()}, {"issues", std::move(issues)}, {"notes", r.notes}};
}

Json ends_to_json(const EndsResult& e) {
  Json ends = Json::array();
  for (const auto& end : e.ends) {
    ends.push_back({{"index", end.index},
                    {"planar", end.planar},
                    {"orientable", end.orientable},
                    {"first_nonplanar_depth", optional_depth(end.first_nonplanar_depth)},
                    {"first_nonorientable_depth", optional_depth(end.first_nonorientable_depth)}});
  }
  Json leaves = Json::array();
  for (std::size_t n = 1; n < e.leaf_counts.size(); ++n) leaves.push_back(e.leaf_counts[n]);
  auto t = end_triple(e);
  return Json{{"horizon", e.horizon},
              {"leaf_counts", std::move(leaves)},
              {"stabilized", e.stabilized},
              {"exact", e.exact},
              {"ends", std::move(ends)},
              {"end_triple", {{"ends", t.ends}, {"nonplanar", t.nonplanar}, {"nonorientable", t.nonorientable}}}};
}

Json residual_to_json(const SurfaceComplex& s, const ResidualAnalysis& r, const Subcomplex& k) {
  Json domains = Json::array();
  for (const auto& d : r.labels.domains) {
    auto j = domain_to_json(s, d);
    const auto& pieces = r.frontier[d.index];
    j["frontier_components"] = pieces.pieces.size();
    Json ends = Json::array();
    for (const auto& e : r.ends.ends)
      if (e.domain == d.index) ends.push_back(relative_end_to_json(s, e));
    j["ends"] = std::move(ends);
    try {
      auto b = check_end_bound(s, k, d.index);
      j["bound_check"] = {{"count", b.count}, {"bound", b.bound}, {"ok", b.ok}, {"augmented", b.augmented},
                          {"m", b.m},         {"n", b.n},         {"g", b.g}};
    } catch (const Error& e) {
      j["bound_check"] = {{"skipped", e.what()}};
    }
    domains.push_back(std::move(j));
  }
  return Json{{"domains", std::move(domains)},
              {"augmented", r.ends.augmented},
              {"relatively_compact_ends", r.ends.ends.size()}};
}

Json stream_residual_to_json(const StreamResidual& r) {
  const auto& s = r.universe->complex;
  Json domains = Json::array();
  for (const auto& d : r.labels.domains) {
    auto j = domain_to_json(s, d);
    j["frontier_components"] = r.frontier[d.index].pieces.size();
    Json ends = Json::array();
    for (const auto& e : r.ends.ends)
      if (e.domain == d.index) ends.push_back(relative_end_to_json(s, e));
    j["relatively_compact_ends"] = std::move(ends);
    j["stream_ends"] = r.stream_ends[d.index];
    domains.push_back(std::move(j));
  }
  auto embedding = embed_ends_after_deletion(r);
  return Json{{"horizon", r.horizon},
              {"k_depth", r.k_depth},
              {"domains", std::move(domains)},
              {"stream_end_count", embedding.stream_end_count},
              {"relatively_compact_count", embedding.relatively_compact_count},
              {"embedding", {{"image", embedding.image}, {"injective", embedding.injective}}}};
}

Json dynamics_to_json(const SurfaceComplex& s, const EndDynamics& d) {
  Json ends = Json::array();
  for (std::size_t i = 0; i < d.ends.ends.size(); ++i) {
    auto j = relative_end_to_json(s, d.ends.ends[i]);
    j["image"] = d.ends.image[i] == kNone ? Json(nullptr) : Json(d.ends.image[i]);
    ends.push_back(std::move(j));
  }
  Json domain_image = Json::array();
  for (auto x : d.domains.image) domain_image.push_back(x == kNone ? Json(nullptr) : Json(x));
  return Json{{"invariant", d.certificate.ok},
              {"domain_image", std::move(domain_image)},
              {"measure_preserved", d.domains.measure_preserved},
              {"ends", std::move(ends)},
              {"excluded_ends", d.ends.excluded},
              {"injective", d.ends.injective},
              {"natural", d.ends.natural},
              {"all_periodic", d.p51.all_periodic},
              {"orbits", d.p51.orbits},
              {"orbit_lengths", d.p51.orbit_lengths},
              {"period", d.p51.period}};
}

Json make_report(const std::string& command, const std::map<std::string, std::string>& input_digests, Json results,
                 std::vector<std::string> warnings) {
  return Json{{"command", command},
              {"inputs", input_digests},
              {"results", std::move(results)},
              {"warnings", std::move(warnings)}};
}

std::string render_table(const Json& report) {
  std::ostringstream out;
  flatten(report, "", out);
  return out.str();
}

}  // namespace surfends::io
