#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <fstream>

#include "support.hpp"
#include "surfends/io/io.hpp"

using namespace surfends;
namespace fs = std::filesystem;
using io::Json;

namespace {

struct Result {
  int exit_code = -1;
  std::string out;
};

const fs::path& workdir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "surfends-cli-test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Result run(const std::string& args) {
  const auto cmd = std::string(SURFENDS_CLI) + " " + args + " 2>" + (workdir() / "stderr.txt").string();
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string stderr_text() { return io::read_file(workdir() / "stderr.txt"); }

std::string put(const std::string& name, const Json& j) {
  auto p = workdir() / name;
  io::write_file_atomic(p, j.dump());
  return p.string();
}

std::string put_surface(const std::string& name, const SurfaceComplex& s) { return put(name, io::surface_to_json(s)); }

}  // namespace

TEST_CASE("validate") {
  CHECK(run("validate --surface " + put_surface("torus.json", fixtures::torus7())).exit_code == 0);
  auto cyl = put("cylinder.json", io::builder_manifest("cylinder"));
  auto r = run("validate --stream " + cyl + " --horizon 6");
  CHECK(r.exit_code == 0);
  CHECK(Json::parse(r.out)["results"]["valid"] == true);
  // Two triangles meeting only at vertex 0: its link is two disjoint arcs.
  r = run("validate --surface " + put_surface("pinched.json", fixtures::bowtie()));
  CHECK(r.exit_code == 1);
  auto issues = Json::parse(r.out)["results"]["issues"];
  REQUIRE(issues.size() >= 1);
  CHECK(issues[0]["cells"] == Json::array({0}));
}

TEST_CASE("info on the Klein bottle") {
  auto r = run("info --surface " + put_surface("klein.json", fixtures::klein_bottle()));
  REQUIRE(r.exit_code == 0);
  auto res = Json::parse(r.out)["results"];
  CHECK(res["euler_characteristic"] == 0);
  CHECK(res["orientability"] == Json::array({"nonorientable"}));
  CHECK(res["genus"]["crosscaps"] == 2);
}

TEST_CASE("ends of the flute grow one per depth") {
  auto r = run("ends --stream " + put("flute.json", io::builder_manifest("flute")) + " --horizon 10");
  REQUIRE(r.exit_code == 0);
  auto rep = Json::parse(r.out);
  // The flute adds one tube end per ring on top of the outer end.
  Json expected = Json::array();
  for (int n = 1; n <= 10; ++n) expected.push_back(n + 1);
  CHECK(rep["results"]["leaf_counts"] == expected);
  CHECK(rep["results"]["stabilized"] == false);
  CHECK(rep["warnings"].dump().find("at horizon 10") != std::string::npos);
}

TEST_CASE("residual of the sphere equator") {
  auto s = put_surface("sphere.json", fixtures::octahedron());
  auto k = put("equator.json", Json{{"edges", {{1, 2}, {2, 3}, {3, 4}, {4, 1}}}});
  auto r = run("residual --surface " + s + " --k " + k);
  REQUIRE(r.exit_code == 0);
  auto domains = Json::parse(r.out)["results"]["domains"];
  REQUIRE(domains.size() == 2);
  for (const auto& d : domains) {
    CHECK(d["bounded"] == true);
    CHECK(d["bound_check"]["ok"] == true);
    CHECK(d["ends"].size() == 1);
  }
  // Identical invocations give identical bytes.
  CHECK(run("residual --surface " + s + " --k " + k).out == r.out);
  auto table = run("residual --surface " + s + " --k " + k + " --format table");
  CHECK(table.out.find("results.domains[1].bounded: true") != std::string::npos);
}

TEST_CASE("classify, generate, compare and double") {
  auto sig = put("sig.json", Json{{"orientability_class", "nonorientable-odd"}, {"genus", 1}, {"boundary_circles", 1}});
  auto mobius = (workdir() / "mobius.json").string();
  auto r = run("generate --signature " + sig + " --out " + mobius);
  REQUIRE(r.exit_code == 0);
  auto c = Json::parse(run("classify --surface " + mobius).out)["results"];
  CHECK(c["orientability_class"] == "nonorientable-odd");
  CHECK(c["genus"] == 1);
  CHECK(c["boundary_circles"] == 1);
  auto klein = put_surface("klein2.json", fixtures::klein_bottle());
  auto doubled = (workdir() / "double.json").string();
  REQUIRE(run("double --surface " + mobius + " --out " + doubled).exit_code == 0);
  CHECK(Json::parse(run("compare --a " + doubled + " --b " + klein).out)["results"]["answer"] == "yes");
  auto torus = put_surface("torus2.json", fixtures::torus7());
  CHECK(Json::parse(run("compare --a " + doubled + " --b " + torus).out)["results"]["answer"] == "no");
  // Streams compare at the horizon.
  auto cyl = put("cyl2.json", io::builder_manifest("cylinder"));
  auto plane = put("plane.json", io::builder_manifest("plane-grid"));
  CHECK(Json::parse(run("compare --a " + cyl + " --b " + plane + " --horizon 5").out)["results"]["answer"] == "no");
}

TEST_CASE("end permutation of a pole swap") {
  auto s = put_surface("sphere3.json", fixtures::octahedron());
  auto k = put("equator3.json", Json{{"edges", {{1, 2}, {2, 3}, {3, 4}, {4, 1}}}});
  auto f = put("swap.json", Json{{"vertex_map", {5, 1, 2, 3, 4, 0}}, {"domain", "all"}});
  auto r = run("end-perm --surface " + s + " --k " + k + " --map " + f);
  REQUIRE(r.exit_code == 0);
  auto res = Json::parse(r.out)["results"];
  CHECK(res["orbit_lengths"] == Json::array({2}));
  CHECK(res["natural"] == true);
  auto cyl = put("cyl3.json", io::builder_manifest("cylinder"));
  auto lc = cylinder_stream().materialize(5);
  Json edges = Json::array();
  for (EdgeId e = 0; e < lc->complex.edge_count(); ++e) {
    auto [a, b] = lc->complex.edge(e);
    if (lc->vertex_coords[a][1] == 0 && lc->vertex_coords[b][1] == 0) edges.push_back({a, b});
  }
  auto meridian = put("meridian.json", Json{{"edges", edges}});
  auto turn = put("turn.json", Json{{"symmetry", "half-turn"}});
  r = run("end-perm --stream " + cyl + " --k " + meridian + " --map " + turn + " --horizon 4");
  REQUIRE(r.exit_code == 0);
  CHECK(Json::parse(r.out)["results"]["orbit_lengths"] == Json::array({2}));
}

TEST_CASE("exit codes and atomic output") {
  auto bad = workdir() / "bad.json";
  std::ofstream(bad) << "{\n  \"vertices\": 3,\n  \"faces\": [[0, 1, 2]]\n  \"x\": 1\n}\n";
  auto out = workdir() / "never.json";
  auto r = run("info --surface " + bad.string() + " --out " + out.string());
  CHECK(r.exit_code == 2);
  // The position is the last character of the offending token "x" (columns 3 to 5).
  CHECK(stderr_text().find("line 4, column 5") != std::string::npos);
  CHECK_FALSE(fs::exists(out));
  CHECK(run("info --surface " + (workdir() / "missing.json").string()).exit_code == 2);
  // K deeper than the horizon is a domain error.
  auto plane = put("plane2.json", io::builder_manifest("plane-grid"));
  auto f4 = plane_grid_stream().materialize(4);
  FaceId outer = kNone;
  for (FaceId f = 0; f < f4->complex.face_count() && outer == kNone; ++f)
    if (f4->face_layer[f] == 4) outer = f;
  auto deep = put("deep.json", Json{{"faces", {outer}}});
  CHECK(run("residual --stream " + plane + " --k " + deep + " --horizon 3").exit_code == 1);
  auto sphere = put_surface("sphere4.json", fixtures::octahedron());
  auto k = put("pole.json", Json{{"vertices", {0}}});
  auto move = put("move.json", Json{{"vertex_map", {5, 1, 2, 3, 4, 0}}});
  CHECK(run("end-perm --surface " + sphere + " --k " + k + " --map " + move).exit_code == 1);
  CHECK(run("info").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
  auto report = workdir() / "report.json";
  CHECK(run("info --surface " + sphere + " --out " + report.string()).exit_code == 0);
  CHECK(Json::parse(io::read_file(report))["results"]["faces"] == 8);
}

TEST_CASE("corpus is byte-identical across runs") {
  auto a = workdir() / "corpus-a", b = workdir() / "corpus-b";
  REQUIRE(run("corpus --seed 1 --out " + a.string()).exit_code == 0);
  REQUIRE(run("corpus --seed 1 --out " + b.string()).exit_code == 0);
  auto manifest = Json::parse(io::read_file(a / "corpus.json"));
  CHECK(manifest["models"].size() == 18);
  CHECK(manifest["streams"].size() == 7);
  for (const auto& entry : fs::recursive_directory_iterator(a)) {
    if (!entry.is_regular_file()) continue;
    CHECK(io::read_file(entry.path()) == io::read_file(b / fs::relative(entry.path(), a)));
  }
}
