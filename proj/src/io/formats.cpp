#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "surfends/io/io.hpp"

namespace surfends::io {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void parse_fail(const std::string& source, const std::string& what) {
  throw Error(Error::Kind::Parse, source + ": " + what);
}

std::int64_t as_int(const Json& j, const std::string& source, const std::string& where) {
  if (!j.is_number_integer()) parse_fail(source, where + " must be an integer");
  return j.get<std::int64_t>();
}

std::int32_t as_id(const Json& j, const std::string& source, const std::string& where) {
  auto v = as_int(j, source, where);
  if (v < 0 || v > INT32_MAX) parse_fail(source, where + " is out of range");
  return static_cast<std::int32_t>(v);
}

const Json& array_at(const Json& j, const char* key, const std::string& source) {
  static const Json empty = Json::array();
  if (!j.contains(key)) return empty;
  const auto& a = j.at(key);
  if (!a.is_array()) parse_fail(source, std::string("\"") + key + "\" must be an array");
  return a;
}

}  // namespace

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Error::Kind::Io, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(Error::Kind::Io, "error while reading " + path.string());
  return buf.str();
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Error::Kind::Io, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(Error::Kind::Io, "error while writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(Error::Kind::Io, "cannot move output into place at " + path.string());
  }
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // e.byte is the 1-based offset of the last character read, which ends
    // the offending token.
    std::size_t line = 1, column = 1;
    const auto stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string msg = e.what();
    // Drop nlohmann's own "[json.exception.parse_error.101] parse error at line x, column y: " prefix.
    if (auto colon = msg.find(": "); colon != std::string::npos) msg = msg.substr(colon + 2);
    throw Error(Error::Kind::Parse, source + ": parse error at line " + std::to_string(line) + ", column " +
                                        std::to_string(column) + ": " + msg);
  }
}

Json load_json(const fs::path& path) { return parse_json(read_file(path), path.string()); }

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw Error(Error::Kind::Io, "SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

SurfaceComplex surface_from_json(const Json& j, const std::string& source) {
  if (!j.is_object()) parse_fail(source, "a surface must be a JSON object");
  if (!j.contains("vertices")) parse_fail(source, "missing \"vertices\"");
  if (!j.contains("faces")) parse_fail(source, "missing \"faces\"");
  const auto n = as_id(j.at("vertices"), source, "\"vertices\"");
  std::vector<Triangle> faces;
  const auto& list = array_at(j, "faces", source);
  faces.reserve(list.size());
  for (std::size_t i = 0; i < list.size(); ++i) {
    const auto where = "face " + std::to_string(i);
    if (!list[i].is_array() || list[i].size() != 3) parse_fail(source, where + " must list three vertices");
    Triangle t;
    for (int c = 0; c < 3; ++c) {
      t[c] = as_id(list[i][c], source, where);
      if (t[c] >= n) parse_fail(source, where + " references vertex " + std::to_string(t[c]) + " >= " + std::to_string(n));
    }
    faces.push_back(t);
  }
  return SurfaceComplex(n, std::move(faces));
}

Json surface_to_json(const SurfaceComplex& s) {
  Json faces = Json::array();
  for (const auto& t : s.faces()) faces.push_back({t[0], t[1], t[2]});
  return Json{{"vertices", s.vertex_count()}, {"faces", std::move(faces)}};
}

LoadedSubcomplex subcomplex_from_json(const Json& j, const SurfaceComplex& s, const std::string& source) {
  if (!j.is_object()) parse_fail(source, "a subcomplex must be a JSON object");
  LoadedSubcomplex out;
  for (const auto& f : array_at(j, "faces", source)) {
    auto id = as_id(f, source, "face id");
    if (id >= s.face_count()) parse_fail(source, "face " + std::to_string(id) + " is not in the surface");
    out.cells.faces.push_back(id);
  }
  for (const auto& e : array_at(j, "edges", source)) {
    if (!e.is_array() || e.size() != 2) parse_fail(source, "an edge must list two vertices");
    auto a = as_id(e[0], source, "edge vertex"), b = as_id(e[1], source, "edge vertex");
    if (a >= s.vertex_count() || b >= s.vertex_count() || !s.find_edge(a, b))
      parse_fail(source, "edge [" + std::to_string(a) + "," + std::to_string(b) + "] is not in the surface");
    out.cells.edges.push_back(Edge::of(a, b));
  }
  for (const auto& v : array_at(j, "vertices", source)) {
    auto id = as_id(v, source, "vertex id");
    if (id >= s.vertex_count()) parse_fail(source, "vertex " + std::to_string(id) + " is not in the surface");
    out.cells.vertices.push_back(id);
  }
  out.closure = make_subcomplex(s, out.cells);
  auto distinct = [](auto v) {
    std::sort(v.begin(), v.end());
    return static_cast<std::int64_t>(std::unique(v.begin(), v.end()) - v.begin());
  };
  const auto listed = distinct(out.cells.faces) + distinct(out.cells.edges) + distinct(out.cells.vertices);
  const auto closed = static_cast<std::int64_t>(out.closure.faces().size() + out.closure.edges().size() +
                                                out.closure.vertices().size());
  if (closed > listed) out.warnings.push_back("closure added " + std::to_string(closed - listed) + " cells");
  return out;
}

Json subcomplex_to_json(const SurfaceComplex& s, const Subcomplex& k) {
  Json edges = Json::array();
  for (EdgeId e : k.edges()) edges.push_back({s.edge(e).first, s.edge(e).second});
  return Json{{"faces", k.faces()}, {"edges", std::move(edges)}, {"vertices", k.vertices()}};
}

SimplicialAutomorphism automorphism_from_json(const Json& j, const SurfaceComplex& s, const std::string& source) {
  if (!j.is_object() || !j.contains("vertex_map")) parse_fail(source, "missing \"vertex_map\"");
  std::vector<VertexId> map;
  for (const auto& v : array_at(j, "vertex_map", source)) map.push_back(v.is_null() ? kNone : as_id(v, source, "vertex image"));
  std::optional<std::vector<FaceId>> domain;
  if (j.contains("domain")) {
    const auto& d = j.at("domain");
    if (d.is_string()) {
      if (d.get<std::string>() != "all") parse_fail(source, "\"domain\" must be \"all\" or an object with faces");
    } else if (d.is_object()) {
      domain.emplace();
      for (const auto& f : array_at(d, "faces", source)) {
        auto id = as_id(f, source, "domain face");
        if (id >= s.face_count()) parse_fail(source, "domain face " + std::to_string(id) + " is not in the surface");
        domain->push_back(id);
      }
    } else {
      parse_fail(source, "\"domain\" must be \"all\" or an object with faces");
    }
  }
  if (!domain && std::find(map.begin(), map.end(), kNone) != map.end())
    parse_fail(source, "a map defined on all faces cannot leave vertices unmapped");
  auto name = j.contains("name") && j.at("name").is_string() ? j.at("name").get<std::string>() : std::string("map");
  return make_automorphism(s, std::move(map), domain, name);
}

Json automorphism_to_json(const SimplicialAutomorphism& f) {
  Json map = Json::array();
  for (VertexId v : f.vertex_map) map.push_back(v == kNone ? Json(nullptr) : Json(v));
  Json out{{"vertex_map", std::move(map)}};
  if (f.partial) {
    std::vector<FaceId> faces;
    for (FaceId x = 0; x < static_cast<FaceId>(f.face_map.size()); ++x)
      if (f.face_map[x] != kNone) faces.push_back(x);
    out["domain"] = Json{{"faces", faces}};
  } else {
    out["domain"] = "all";
  }
  if (!f.name.empty()) out["name"] = f.name;
  return out;
}

namespace {

ExhaustionStream chunk_stream(const Json& j, const fs::path& base, const std::string& source) {
  const auto& files = array_at(j, "files", source);
  const auto& inclusions = array_at(j, "inclusions", source);
  if (files.empty()) parse_fail(source, "\"files\" is empty");
  if (inclusions.size() + 1 != files.size())
    parse_fail(source, "expected " + std::to_string(files.size() - 1) + " inclusion files, found " +
                           std::to_string(inclusions.size()));
  auto resolve = [&](const Json& p) {
    if (!p.is_string()) parse_fail(source, "file entries must be strings");
    fs::path path = p.get<std::string>();
    return path.is_absolute() ? path : base / path;
  };
  std::vector<SurfaceComplex> chunks;
  for (const auto& f : files) {
    auto path = resolve(f);
    chunks.push_back(surface_from_json(load_json(path), path.string()));
  }
  // Compose the inclusions so every vertex of F_i is named in F_last.
  const auto n = static_cast<std::int32_t>(chunks.size());
  std::vector<std::vector<VertexId>> to_last(n);
  to_last[n - 1].resize(chunks[n - 1].vertex_count());
  for (VertexId v = 0; v < chunks[n - 1].vertex_count(); ++v) to_last[n - 1][v] = v;
  std::vector<std::vector<VertexId>> step(n - 1);
  for (std::int32_t i = 0; i + 1 < n; ++i) {
    auto path = resolve(inclusions[i]);
    auto inc = load_json(path);
    if (!inc.is_object() || !inc.contains("vertex_map")) parse_fail(path.string(), "missing \"vertex_map\"");
    for (const auto& v : array_at(inc, "vertex_map", path.string())) {
      auto id = as_id(v, path.string(), "vertex image");
      if (id >= chunks[i + 1].vertex_count()) parse_fail(path.string(), "vertex image out of range");
      step[i].push_back(id);
    }
    if (static_cast<std::int32_t>(step[i].size()) != chunks[i].vertex_count())
      parse_fail(path.string(), "vertex_map must have one entry per vertex of F_" + std::to_string(i + 1));
    auto sorted = step[i];
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      parse_fail(path.string(), "inclusion is not injective");
  }
  for (std::int32_t i = n - 2; i >= 0; --i) {
    to_last[i].resize(chunks[i].vertex_count());
    for (VertexId v = 0; v < chunks[i].vertex_count(); ++v) to_last[i][v] = to_last[i + 1][step[i][v]];
  }
  const auto& last = chunks[n - 1];
  std::map<std::array<VertexId, 3>, FaceId> index;
  for (FaceId f = 0; f < last.face_count(); ++f) {
    auto t = last.face(f);
    std::sort(t.begin(), t.end());
    index.emplace(t, f);
  }
  std::vector<std::int32_t> layer(last.face_count(), n);
  for (std::int32_t i = n - 1; i >= 0; --i) {
    for (const auto& t : chunks[i].faces()) {
      std::array<VertexId, 3> img{to_last[i][t[0]], to_last[i][t[1]], to_last[i][t[2]]};
      std::sort(img.begin(), img.end());
      auto it = index.find(img);
      if (it == index.end()) parse_fail(source, "a face of F_" + std::to_string(i + 1) + " is not carried into F_" + std::to_string(n));
      layer[it->second] = i + 1;
    }
  }
  // Sort faces by layer and number vertices by first use so ids are prefix-stable.
  std::vector<FaceId> order(last.face_count());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](FaceId a, FaceId b) { return layer[a] < layer[b]; });
  std::vector<VertexId> renumber(last.vertex_count(), kNone);
  VertexId next = 0;
  LayeredComplex lc;
  std::vector<Triangle> faces;
  for (FaceId f : order) {
    Triangle t = last.face(f);
    for (auto& v : t) {
      if (renumber[v] == kNone) renumber[v] = next++;
      v = renumber[v];
    }
    faces.push_back(t);
    lc.face_layer.push_back(layer[f]);
  }
  lc.complex = SurfaceComplex(next, std::move(faces));
  lc.depth = n;
  StreamInfo info;
  info.kind = "chunks";
  info.name = fs::path(source).stem().string();
  return fixed_stream(std::move(info), std::move(lc));
}

}  // namespace

ExhaustionStream stream_from_manifest(const Json& j, const fs::path& base, const std::string& source) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    parse_fail(source, "a manifest needs a string \"kind\"");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "chunks") return chunk_stream(j, base, source);
  if (kind != "builder") parse_fail(source, "unknown manifest kind \"" + kind + "\"");
  if (!j.contains("name") || !j.at("name").is_string()) parse_fail(source, "a builder manifest needs a \"name\"");
  std::map<std::string, std::int64_t> params;
  if (j.contains("params")) {
    if (!j.at("params").is_object()) parse_fail(source, "\"params\" must be an object");
    for (const auto& [key, value] : j.at("params").items()) params[key] = as_int(value, source, "parameter " + key);
  }
  return make_builder(j.at("name").get<std::string>(), params);
}

Json builder_manifest(const std::string& name, const std::map<std::string, std::int64_t>& params) {
  return Json{{"kind", "builder"}, {"name", name}, {"params", params}};
}

Json signature_to_json(const Signature& sig) {
  Json out{{"orientability_class", to_string(sig.orientability)},
           {"genus", sig.genus ? Json(*sig.genus) : Json("infinite")},
           {"boundary_circles", sig.boundary_circles},
           {"ends", {{"ends", sig.ends.ends}, {"nonplanar", sig.ends.nonplanar}, {"nonorientable", sig.ends.nonorientable}}},
           {"exact", sig.exact},
           {"horizon", sig.horizon},
           {"qualifiers", sig.qualifiers}};
  if (sig.end_space) out["end_space"] = *sig.end_space;
  return out;
}

Signature signature_from_json(const Json& j, const std::string& source) {
  if (!j.is_object()) parse_fail(source, "a signature must be a JSON object");
  Signature sig;
  if (!j.contains("orientability_class") || !j.at("orientability_class").is_string())
    parse_fail(source, "missing \"orientability_class\"");
  try {
    sig.orientability = orientability_class_from(j.at("orientability_class").get<std::string>());
  } catch (const Error& e) {
    parse_fail(source, e.what());
  }
  if (!j.contains("genus")) parse_fail(source, "missing \"genus\"");
  const auto& g = j.at("genus");
  if (g.is_string()) {
    if (g.get<std::string>() != "infinite") parse_fail(source, "\"genus\" must be an integer or \"infinite\"");
  } else {
    sig.genus = as_int(g, source, "\"genus\"");
  }
  if (j.contains("boundary_circles")) sig.boundary_circles = as_int(j.at("boundary_circles"), source, "\"boundary_circles\"");
  if (j.contains("ends")) {
    const auto& e = j.at("ends");
    if (!e.is_object()) parse_fail(source, "\"ends\" must be an object");
    if (e.contains("ends")) sig.ends.ends = as_int(e.at("ends"), source, "\"ends.ends\"");
    if (e.contains("nonplanar")) sig.ends.nonplanar = as_int(e.at("nonplanar"), source, "\"ends.nonplanar\"");
    if (e.contains("nonorientable")) sig.ends.nonorientable = as_int(e.at("nonorientable"), source, "\"ends.nonorientable\"");
  }
  if (j.contains("end_space")) {
    if (!j.at("end_space").is_string()) parse_fail(source, "\"end_space\" must be a string");
    sig.end_space = j.at("end_space").get<std::string>();
  }
  return sig;
}

}  // namespace surfends::io
