#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <string>
#include <thread>

#include "json.hpp"
#include "surfends/surfends.h"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

const char* kOctahedron =
    R"({"vertices": 6, "faces": [[0,1,2],[0,2,3],[0,3,4],[0,4,1],[5,2,1],[5,3,2],[5,4,3],[5,1,4]]})";

fs::path write_temp(const std::string& name, const std::string& text) {
  auto dir = fs::temp_directory_path() / "surfends-capi";
  fs::create_directories(dir);
  auto p = dir / name;
  std::ofstream(p) << text;
  return p;
}

Json take(char* raw) {
  REQUIRE(raw != nullptr);
  auto j = Json::parse(raw);
  se_string_free(raw);
  return j;
}

}  // namespace

TEST_CASE("surfaces load and report counts") {
  se_surface* s = nullptr;
  REQUIRE(se_surface_from_json(kOctahedron, &s) == SE_OK);
  int64_t v = 0, e = 0, f = 0;
  CHECK(se_surface_counts(s, &v, &e, &f) == SE_OK);
  CHECK(v == 6);
  CHECK(e == 12);
  CHECK(f == 8);
  char* out = nullptr;
  REQUIRE(se_info(s, &out) == SE_OK);
  auto info = take(out);
  CHECK(info["euler_characteristic"] == 2);
  CHECK(info["genus"]["handles"] == 0);
  se_surface_free(s);
}

TEST_CASE("errors set codes and a per-thread message") {
  se_surface* s = nullptr;
  CHECK(se_surface_from_json("{\"vertices\": 3,", &s) == SE_ERR_PARSE);
  CHECK(std::string(se_last_error()).find("line 1") != std::string::npos);
  CHECK(se_surface_load("/nonexistent.json", &s) == SE_ERR_IO);
  CHECK(se_info(nullptr, nullptr) == SE_ERR_INVALID_ARGUMENT);
  // Another thread's failure leaves this thread's message alone.
  CHECK(se_surface_load("/nonexistent.json", &s) == SE_ERR_IO);
  const std::string mine = se_last_error();
  std::thread([] {
    se_surface* t = nullptr;
    se_surface_from_json("[", &t);
  }).join();
  CHECK(std::string(se_last_error()) == mine);
}

TEST_CASE("residual domains and end permutation through handles") {
  se_surface* s = nullptr;
  REQUIRE(se_surface_from_json(kOctahedron, &s) == SE_OK);
  auto kpath = write_temp("equator.json", R"({"edges": [[1,2],[2,3],[3,4],[4,1]]})");
  auto mpath = write_temp("swap.json", R"({"vertex_map": [5,1,2,3,4,0]})");
  se_subcomplex* k = nullptr;
  char* warnings = nullptr;
  REQUIRE(se_subcomplex_load(s, kpath.c_str(), &k, &warnings) == SE_OK);
  CHECK(take(warnings).size() == 1);  // the four equator vertices were added
  char* out = nullptr;
  REQUIRE(se_residual(s, k, &out) == SE_OK);
  auto r = take(out);
  REQUIRE(r["domains"].size() == 2);
  for (const auto& d : r["domains"]) {
    CHECK(d["bounded"] == true);
    CHECK(d["bound_check"]["ok"] == true);
  }
  se_map* f = nullptr;
  REQUIRE(se_map_load(s, mpath.c_str(), &f) == SE_OK);
  REQUIRE(se_end_perm(s, k, f, &out) == SE_OK);
  auto p = take(out);
  CHECK(p["orbit_lengths"] == Json::array({2}));
  CHECK(p["all_periodic"] == true);
  // Quarter turn about the axis through 1 and 3 moves the equator: a domain error.
  auto bad = write_temp("turn.json", R"({"vertex_map": [2,1,5,3,0,4]})");
  se_map* g = nullptr;
  REQUIRE(se_map_load(s, bad.c_str(), &g) == SE_OK);
  CHECK(se_end_perm(s, k, g, &out) == SE_ERR_DOMAIN);
  se_map_free(g);
  se_map_free(f);
  se_subcomplex_free(k);
  se_surface_free(s);
}

TEST_CASE("streams, signatures and comparison") {
  se_stream* st = nullptr;
  REQUIRE(se_stream_from_json(R"({"kind": "builder", "name": "cylinder", "params": {"circumference": 6}})", nullptr,
                              &st) == SE_OK);
  char* out = nullptr;
  REQUIRE(se_signature_stream(st, 6, &out) == SE_OK);
  auto sig = take(out);
  CHECK(sig["ends"]["ends"] == 2);
  CHECK(sig["genus"] == 0);
  REQUIRE(se_compare_signatures(sig.dump().c_str(), sig.dump().c_str(), &out) == SE_OK);
  CHECK(take(out)["answer"] == "yes");
  CHECK(se_signature_stream(st, 0, &out) == SE_ERR_INVALID_ARGUMENT);
  se_stream_free(st);
  CHECK(se_stream_from_json(R"({"kind": "builder", "name": "moebius-strip"})", nullptr, &st) ==
        SE_ERR_INVALID_ARGUMENT);
}

TEST_CASE("generate and double") {
  char* out = nullptr;
  REQUIRE(se_generate(R"({"orientability_class": "orientable", "genus": 0, "boundary_circles": 1})", &out) == SE_OK);
  auto g = take(out);
  REQUIRE(g.contains("surface"));
  se_surface* disk = nullptr;
  REQUIRE(se_surface_from_json(g["surface"].dump().c_str(), &disk) == SE_OK);
  REQUIRE(se_double(disk, &out) == SE_OK);
  auto d = take(out);
  CHECK(d["report"]["euler_characteristic"] == 2);
  CHECK(d["report"]["boundary_circles"] == 0);
  se_surface_free(disk);
  REQUIRE(se_generate(R"({"orientability_class": "orientable", "genus": "infinite", "ends": {"ends": 2, "nonplanar": 2}})",
                      &out) == SE_OK);
  CHECK(take(out)["manifest"]["name"] == "model");
  CHECK(se_generate(R"({"orientability_class": "nonorientable-odd", "genus": 2})", &out) == SE_ERR_INVALID_ARGUMENT);
}
