#include <random>

#include "surfends/io/io.hpp"

namespace surfends::io {

namespace fs = std::filesystem;

namespace {

Json expected(const std::string& cls, Json genus, std::int64_t boundary, std::int64_t ends, std::int64_t nonplanar,
              std::int64_t nonorientable) {
  return Json{{"orientability_class", cls},
              {"genus", std::move(genus)},
              {"boundary_circles", boundary},
              {"ends", {{"ends", ends}, {"nonplanar", nonplanar}, {"nonorientable", nonorientable}}}};
}

// Closure of a random edge walk of 2..8 steps.
Json random_k(const SurfaceComplex& s, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int32_t> pick_vertex(0, s.vertex_count() - 1);
  VertexId v = pick_vertex(rng);
  while (s.vertex_edges(v).empty()) v = pick_vertex(rng);
  const int steps = std::uniform_int_distribution<int>(2, 8)(rng);
  Json edges = Json::array();
  for (int i = 0; i < steps; ++i) {
    auto around = s.vertex_edges(v);
    auto e = around[std::uniform_int_distribution<std::size_t>(0, around.size() - 1)(rng)];
    auto [a, b] = s.edge(e);
    edges.push_back({a, b});
    v = a == v ? b : a;
  }
  return Json{{"faces", Json::array()}, {"edges", std::move(edges)}, {"vertices", Json::array()}};
}

void emit(const fs::path& dir, const std::string& rel, const Json& j) {
  write_file_atomic(dir / rel, j.dump(1) + "\n");
}

}  // namespace

Json write_corpus(const fs::path& dir, std::uint64_t seed) {
  std::error_code ec;
  for (const char* sub : {"models", "subcomplexes", "streams"}) {
    fs::create_directories(dir / sub, ec);
    if (ec) throw Error(Error::Kind::Io, "cannot create " + (dir / sub).string());
  }
  std::mt19937_64 rng(seed);
  Json models = Json::array();
  struct Family {
    const char* cls;
    std::int32_t handles, crosscaps;
  };
  std::vector<Family> families;
  for (std::int32_t g = 0; g <= 2; ++g) families.push_back({"orientable", g, 0});
  for (std::int32_t k = 1; k <= 3; ++k) families.push_back({k % 2 ? "nonorientable-odd" : "nonorientable-even", 0, k});
  for (const auto& fam : families) {
    for (std::int32_t b = 0; b <= 2; ++b) {
      const bool orientable = fam.crosscaps == 0;
      const std::string name = std::string(orientable ? "orientable-g" : "crosscaps-") +
                               std::to_string(orientable ? fam.handles : fam.crosscaps) + "-b" + std::to_string(b);
      auto s = compact_model(fam.handles, fam.crosscaps, b);
      emit(dir, "models/" + name + ".json", surface_to_json(s));
      emit(dir, "subcomplexes/" + name + ".k.json", random_k(s, rng));
      models.push_back({{"name", name},
                        {"surface", "models/" + name + ".json"},
                        {"k", "subcomplexes/" + name + ".k.json"},
                        {"expected", expected(fam.cls, orientable ? fam.handles : fam.crosscaps, b, 0, 0, 0)}});
    }
  }
  struct StreamCase {
    const char* name;
    Json expected;
  };
  const std::vector<StreamCase> stream_cases = {
      {"plane-grid", expected("orientable", 0, 0, 1, 0, 0)},
      {"half-plane", Json{{"note", "non-compact boundary; no signature"}}},
      {"cylinder", expected("orientable", 0, 0, 2, 0, 0)},
      {"flute", Json{{"note", "genus 0, one new planar end per depth"}}},
      {"jacobs-ladder", expected("orientable", "infinite", 0, 2, 2, 0)},
      {"infinite-crosscap", expected("infinitely-nonorientable", "infinite", 0, 1, 1, 1)},
      {"binary-tree", Json{{"orientability_class", "orientable"}, {"genus", 0}, {"end_space", "cantor set, all ends planar"}}},
  };
  Json streams = Json::array();
  for (const auto& c : stream_cases) {
    const std::string rel = std::string("streams/") + c.name + ".json";
    emit(dir, rel, builder_manifest(c.name));
    streams.push_back({{"name", c.name}, {"manifest", rel}, {"expected", c.expected}});
  }
  Json manifest{{"seed", seed}, {"models", std::move(models)}, {"streams", std::move(streams)}};
  emit(dir, "corpus.json", manifest);
  return manifest;
}

}  // namespace surfends::io
