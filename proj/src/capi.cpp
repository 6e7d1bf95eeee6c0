#include "surfends/surfends.h"

#include <cstring>
#include <new>

#include "surfends/io/io.hpp"

using namespace surfends;
using io::Json;

struct se_surface {
  SurfaceComplex s;
};
struct se_stream {
  ExhaustionStream s;
};
struct se_subcomplex {
  Subcomplex k;
};
struct se_map {
  SimplicialAutomorphism f;
};

namespace {

thread_local std::string last_error;

se_status fail(se_status code, const std::string& what) {
  last_error = what;
  return code;
}

se_status status_of(const Error& e) {
  switch (e.kind()) {
    case Error::Kind::Domain: return SE_ERR_DOMAIN;
    case Error::Kind::Io: return SE_ERR_IO;
    case Error::Kind::Parse: return SE_ERR_PARSE;
    case Error::Kind::InvalidArgument: return SE_ERR_INVALID_ARGUMENT;
  }
  return SE_ERR_INTERNAL;
}

template <class F>
se_status guarded(F&& body) {
  try {
    body();
    return SE_OK;
  } catch (const Error& e) {
    return fail(status_of(e), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SE_ERR_INTERNAL, e.what());
  }
}

void require(const void* p, const char* what) {
  if (!p) throw Error(Error::Kind::InvalidArgument, std::string("null ") + what);
}

char* dup(const std::string& text) {
  auto* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

void put(char** out, const Json& j) {
  require(out, "output pointer");
  *out = dup(j.dump());
}

Json qualifiers_json(const std::vector<std::string>& q) { return Json(q); }

Json genus_json(const Genus& g) {
  return Json{{g.orientability == Orientability::Orientable ? "handles" : "crosscaps", g.value}};
}

// K of a stream, read against F_{h+1}.
CellSet stream_cells(const ExhaustionStream& stream, const char* k_path, std::int32_t horizon, Json* warnings) {
  require(k_path, "subcomplex path");
  if (horizon < 1) throw Error(Error::Kind::InvalidArgument, "horizon must be at least 1");
  auto lc = stream.materialize(horizon + 1);
  auto loaded = io::subcomplex_from_json(io::load_json(k_path), lc->complex, k_path);
  if (warnings) *warnings = loaded.warnings;
  return loaded.cells;
}

}  // namespace

extern "C" {

const char* se_last_error(void) { return last_error.c_str(); }
const char* se_version(void) { return "1.0.0"; }
void se_string_free(char* s) { std::free(s); }

se_status se_surface_load(const char* path, se_surface** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output pointer");
    *out = new se_surface{io::surface_from_json(io::load_json(path), path)};
  });
}

se_status se_surface_from_json(const char* text, se_surface** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "output pointer");
    *out = new se_surface{io::surface_from_json(io::parse_json(text, "surface"))};
  });
}

void se_surface_free(se_surface* s) { delete s; }

se_status se_surface_counts(const se_surface* s, int64_t* vertices, int64_t* edges, int64_t* faces) {
  return guarded([&] {
    require(s, "surface");
    if (vertices) *vertices = s->s.vertex_count();
    if (edges) *edges = s->s.edge_count();
    if (faces) *faces = s->s.face_count();
  });
}

se_status se_surface_to_json(const se_surface* s, char** out) {
  return guarded([&] {
    require(s, "surface");
    put(out, io::surface_to_json(s->s));
  });
}

se_status se_stream_load(const char* path, se_stream** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "output pointer");
    std::filesystem::path p(path);
    *out = new se_stream{io::stream_from_manifest(io::load_json(p), p.parent_path(), path)};
  });
}

se_status se_stream_from_json(const char* text, const char* base_dir, se_stream** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "output pointer");
    *out = new se_stream{io::stream_from_manifest(io::parse_json(text, "manifest"), base_dir ? base_dir : ".")};
  });
}

void se_stream_free(se_stream* s) { delete s; }

se_status se_subcomplex_load(const se_surface* s, const char* path, se_subcomplex** out, char** warnings) {
  return guarded([&] {
    require(s, "surface");
    require(path, "path");
    require(out, "output pointer");
    auto loaded = io::subcomplex_from_json(io::load_json(path), s->s, path);
    if (warnings) *warnings = dup(Json(loaded.warnings).dump());
    *out = new se_subcomplex{std::move(loaded.closure)};
  });
}

void se_subcomplex_free(se_subcomplex* k) { delete k; }

se_status se_map_load(const se_surface* s, const char* path, se_map** out) {
  return guarded([&] {
    require(s, "surface");
    require(path, "path");
    require(out, "output pointer");
    *out = new se_map{io::automorphism_from_json(io::load_json(path), s->s, path)};
  });
}

void se_map_free(se_map* f) { delete f; }

se_status se_validate_surface(const se_surface* s, char** out) {
  return guarded([&] {
    require(s, "surface");
    put(out, io::validation_to_json(validate_surface(s->s)));
  });
}

se_status se_validate_stream(const se_stream* s, int32_t horizon, char** out) {
  return guarded([&] {
    require(s, "stream");
    if (horizon < 1) throw Error(Error::Kind::InvalidArgument, "horizon must be at least 1");
    auto j = io::validation_to_json(validate_exhaustion(s->s, horizon));
    j["horizon"] = horizon;
    j["qualifiers"] = {"at horizon " + std::to_string(horizon), "trusted: exhaustive producer"};
    put(out, j);
  });
}

se_status se_info(const se_surface* s, char** out) {
  return guarded([&] {
    require(s, "surface");
    const auto& c = s->s;
    auto comps = connected_components(c);
    Json orient = Json::array();
    for (auto o : orientability(c)) orient.push_back(o == Orientability::Orientable ? "orientable" : "nonorientable");
    Json j{{"vertices", c.vertex_count()},
           {"edges", c.edge_count()},
           {"faces", c.face_count()},
           {"euler_characteristic", euler_characteristic(c)},
           {"components", comps.size()},
           {"orientability", std::move(orient)},
           {"boundary_circles", boundary_components(c).size()}};
    j["genus"] = comps.size() == 1 ? genus_json(genus(c)) : Json(nullptr);
    put(out, j);
  });
}

se_status se_ends(const se_stream* s, int32_t horizon, char** out) {
  return guarded([&] {
    require(s, "stream");
    if (horizon < 1) throw Error(Error::Kind::InvalidArgument, "horizon must be at least 1");
    auto e = ends(s->s, horizon);
    auto j = io::ends_to_json(e);
    j["qualifiers"] = qualifiers_json(e.qualifiers);
    put(out, j);
  });
}

se_status se_residual(const se_surface* s, const se_subcomplex* k, char** out) {
  return guarded([&] {
    require(s, "surface");
    require(k, "subcomplex");
    put(out, io::residual_to_json(s->s, analyze_residual(s->s, k->k), k->k));
  });
}

se_status se_residual_stream(const se_stream* s, const char* k_path, int32_t horizon, char** out) {
  return guarded([&] {
    require(s, "stream");
    Json warnings;
    auto cells = stream_cells(s->s, k_path, horizon, &warnings);
    auto r = analyze_residual(s->s, cells, horizon);
    auto j = io::stream_residual_to_json(r);
    j["qualifiers"] = qualifiers_json(r.qualifiers);
    j["load_warnings"] = warnings;
    put(out, j);
  });
}

se_status se_signature_surface(const se_surface* s, char** out) {
  return guarded([&] {
    require(s, "surface");
    put(out, io::signature_to_json(signature(s->s)));
  });
}

se_status se_signature_stream(const se_stream* s, int32_t horizon, char** out) {
  return guarded([&] {
    require(s, "stream");
    if (horizon < 1) throw Error(Error::Kind::InvalidArgument, "horizon must be at least 1");
    put(out, io::signature_to_json(signature(s->s, horizon)));
  });
}

se_status se_compare_signatures(const char* a_json, const char* b_json, char** out) {
  return guarded([&] {
    require(a_json, "signature");
    require(b_json, "signature");
    auto parse = [](const char* text) {
      auto j = io::parse_json(text, "signature");
      auto sig = io::signature_from_json(j);
      // Exactness and horizon travel with the signature document.
      if (j.contains("exact") && j.at("exact").is_boolean()) sig.exact = j.at("exact").get<bool>();
      if (j.contains("horizon") && j.at("horizon").is_number_integer()) sig.horizon = j.at("horizon").get<std::int32_t>();
      return sig;
    };
    auto c = homeomorphic(parse(a_json), parse(b_json));
    put(out, Json{{"answer", to_string(c.answer)}, {"reasons", c.reasons}});
  });
}

se_status se_generate(const char* signature_json, char** out) {
  return guarded([&] {
    require(signature_json, "signature");
    auto sig = io::signature_from_json(io::parse_json(signature_json, "signature"));
    check_consistent(sig);
    auto model = generate_model(sig);
    Json j{{"description", model.description}};
    if (model.surface) {
      j["surface"] = io::surface_to_json(*model.surface);
    } else if (model.spec) {
      const auto& m = *model.spec;
      j["manifest"] = io::builder_manifest("model", {{"handles", m.handles},
                                                     {"crosscaps", m.crosscaps},
                                                     {"boundary", m.boundary},
                                                     {"ends", m.ends},
                                                     {"handle_ends", m.handle_ends},
                                                     {"crosscap_ends", m.crosscap_ends}});
    } else {
      const auto& info = model.stream->info();
      j["manifest"] = io::builder_manifest(info.name, info.params);
    }
    put(out, j);
  });
}

se_status se_double(const se_surface* s, char** out) {
  return guarded([&] {
    require(s, "surface");
    auto d = double_surface(s->s);
    std::int64_t shared = 0;
    for (char c : d.shared) shared += c != 0;
    Json report{{"subdivided", d.subdivided},
                {"euler_characteristic", euler_characteristic(d.complex)},
                {"input_euler_characteristic", euler_characteristic(s->s)},
                {"boundary_circles", boundary_components(d.complex).size()},
                {"shared_vertices", shared}};
    put(out, Json{{"surface", io::surface_to_json(d.complex)}, {"report", std::move(report)}});
  });
}

se_status se_end_perm(const se_surface* s, const se_subcomplex* k, const se_map* f, char** out) {
  return guarded([&] {
    require(s, "surface");
    require(k, "subcomplex");
    require(f, "map");
    auto d = verify_p51(s->s, f->f, k->k);
    auto j = io::dynamics_to_json(s->s, d);
    j["qualifiers"] = qualifiers_json(d.qualifiers);
    put(out, j);
  });
}

se_status se_end_perm_stream(const se_stream* s, const char* k_path, const char* map_path, int32_t horizon,
                             char** out) {
  return guarded([&] {
    require(s, "stream");
    require(map_path, "map path");
    auto m = io::load_json(map_path);
    if (!m.is_object() || !m.contains("symmetry") || !m.at("symmetry").is_string())
      throw Error(Error::Kind::Parse, std::string(map_path) + ": stream maps name a declared \"symmetry\"");
    auto cells = stream_cells(s->s, k_path, horizon, nullptr);
    auto d = verify_p51(s->s, m.at("symmetry").get<std::string>(), cells, horizon);
    auto lc = s->s.materialize(horizon + 1);
    auto j = io::dynamics_to_json(lc->complex, d);
    j["qualifiers"] = qualifiers_json(d.qualifiers);
    put(out, j);
  });
}

se_status se_sha256_file(const char* path, char** hex) {
  return guarded([&] {
    require(path, "path");
    require(hex, "output pointer");
    *hex = dup(io::sha256_hex(io::read_file(path)));
  });
}

se_status se_write_file_atomic(const char* path, const char* content) {
  return guarded([&] {
    require(path, "path");
    require(content, "content");
    io::write_file_atomic(path, content);
  });
}

se_status se_write_corpus(const char* dir, uint64_t seed, char** manifest) {
  return guarded([&] {
    require(dir, "directory");
    put(manifest, io::write_corpus(dir, seed));
  });
}

}  // extern "C"
