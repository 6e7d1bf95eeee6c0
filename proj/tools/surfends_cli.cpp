// Command-line front end over the C interface. Every command prints one JSON
// report (or its table rendering) and exits 0 on success, 1 when the
// operation does not apply to the input, 2 on unreadable or ill-formed input.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "surfends/surfends.h"

namespace {

using Json = nlohmann::json;

struct Failure {
  int exit_code;
  std::string code;
  std::string message;
};

int exit_code_for(se_status s) {
  switch (s) {
    case SE_ERR_DOMAIN:
    case SE_ERR_INVALID_ARGUMENT: return 1;
    default: return 2;
  }
}

const char* status_name(se_status s) {
  switch (s) {
    case SE_OK: return "ok";
    case SE_ERR_DOMAIN: return "domain";
    case SE_ERR_IO: return "io";
    case SE_ERR_PARSE: return "parse";
    case SE_ERR_INVALID_ARGUMENT: return "invalid-argument";
    default: return "internal";
  }
}

void check(se_status s) {
  if (s != SE_OK) throw Failure{exit_code_for(s), status_name(s), se_last_error()};
}

[[noreturn]] void usage(const std::string& message) { throw Failure{2, "usage", message}; }

struct StringDeleter {
  void operator()(char* p) const { se_string_free(p); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Surface = std::unique_ptr<se_surface, Deleter<se_surface, se_surface_free>>;
using Stream = std::unique_ptr<se_stream, Deleter<se_stream, se_stream_free>>;
using Sub = std::unique_ptr<se_subcomplex, Deleter<se_subcomplex, se_subcomplex_free>>;
using Map = std::unique_ptr<se_map, Deleter<se_map, se_map_free>>;

// Calls an analysis that writes a JSON string and parses the result.
template <class F>
Json call_json(F&& f) {
  char* raw = nullptr;
  check(f(&raw));
  OwnedString owned(raw);
  return Json::parse(raw);
}

struct Options {
  std::string surface, stream, k, map, a, b, signature, out, format = "json";
  int horizon = 8;
  std::uint64_t seed = 1;
};

class Runner {
 public:
  Runner(std::string command, const Options& o) : command_(std::move(command)), o_(o) {}

  Surface surface(const std::string& path) {
    digest(path);
    se_surface* s = nullptr;
    check(se_surface_load(path.c_str(), &s));
    return Surface(s);
  }
  Stream stream(const std::string& path) {
    digest(path);
    se_stream* s = nullptr;
    check(se_stream_load(path.c_str(), &s));
    warnings_.push_back("at horizon " + std::to_string(o_.horizon));
    warnings_.push_back("trusted: exhaustive producer");
    return Stream(s);
  }
  Sub subcomplex(const se_surface* s, const std::string& path) {
    digest(path);
    se_subcomplex* k = nullptr;
    char* w = nullptr;
    check(se_subcomplex_load(s, path.c_str(), &k, &w));
    OwnedString owned(w);
    for (const auto& x : Json::parse(w)) warnings_.push_back(path + ": " + x.get<std::string>());
    return Sub(k);
  }
  Map map(const se_surface* s, const std::string& path) {
    digest(path);
    se_map* f = nullptr;
    check(se_map_load(s, path.c_str(), &f));
    return Map(f);
  }
  void digest(const std::string& path) {
    char* hex = nullptr;
    check(se_sha256_file(path.c_str(), &hex));
    OwnedString owned(hex);
    digests_[path] = hex;
  }
  void warn(const std::string& w) { warnings_.push_back(w); }

  Json report(Json results) {
    if (results.is_object() && results.contains("qualifiers"))
      for (const auto& q : results["qualifiers"]) warnings_.push_back(q.get<std::string>());
    std::sort(warnings_.begin(), warnings_.end());
    warnings_.erase(std::unique(warnings_.begin(), warnings_.end()), warnings_.end());
    Json args;
    auto add = [&](const char* key, const std::string& v) {
      if (!v.empty()) args[key] = v;
    };
    add("surface", o_.surface);
    add("stream", o_.stream);
    add("k", o_.k);
    add("map", o_.map);
    add("a", o_.a);
    add("b", o_.b);
    add("signature", o_.signature);
    add("out", o_.out);
    if (!o_.stream.empty() || command_ == "compare") args["horizon"] = o_.horizon;
    if (command_ == "corpus") args["seed"] = o_.seed;
    return Json{{"command", {{"name", command_}, {"args", args}}},
                {"inputs", digests_},
                {"results", std::move(results)},
                {"warnings", warnings_}};
  }

 private:
  std::string command_;
  const Options& o_;
  std::map<std::string, std::string> digests_;
  std::vector<std::string> warnings_;
};

std::string render(const Json& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  // Table: one "path: value" line per scalar leaf.
  std::ostringstream out;
  std::function<void(const Json&, const std::string&)> walk = [&](const Json& j, const std::string& path) {
    if (j.is_object() && !j.empty()) {
      for (const auto& [key, value] : j.items()) walk(value, path.empty() ? key : path + "." + key);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
      for (std::size_t i = 0; i < j.size(); ++i) walk(j[i], path + "[" + std::to_string(i) + "]");
    } else {
      out << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
  };
  walk(report, "");
  return out.str();
}

void write_out(const std::string& path, const std::string& content) {
  check(se_write_file_atomic(path.c_str(), content.c_str()));
}

bool is_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) return false;
  try {
    auto j = Json::parse(in);
    return j.is_object() && j.contains("kind");
  } catch (const Json::exception&) {
    return false;
  }
}

// Signature of a surface file or stream manifest, as a JSON string.
std::string signature_of(Runner& r, const std::string& path, int horizon) {
  Json sig;
  if (is_manifest(path)) {
    auto s = r.stream(path);
    sig = call_json([&](char** out) { return se_signature_stream(s.get(), horizon, out); });
  } else {
    auto s = r.surface(path);
    sig = call_json([&](char** out) { return se_signature_surface(s.get(), out); });
  }
  return sig.dump();
}

int run(const std::string& command, const Options& o) {
  Runner r(command, o);
  Json results;
  int exit_code = 0;
  bool report_to_out = true;
  auto need = [](const std::string& v, const char* flag) {
    if (v.empty()) usage(std::string("missing ") + flag);
  };
  if (o.horizon < 1) usage("--horizon must be at least 1");

  if (command == "validate") {
    if (o.surface.empty() == o.stream.empty()) usage("validate needs exactly one of --surface or --stream");
    if (!o.surface.empty()) {
      auto s = r.surface(o.surface);
      results = call_json([&](char** out) { return se_validate_surface(s.get(), out); });
    } else {
      auto s = r.stream(o.stream);
      results = call_json([&](char** out) { return se_validate_stream(s.get(), o.horizon, out); });
    }
    if (!results["valid"].get<bool>()) exit_code = 1;
  } else if (command == "info") {
    need(o.surface, "--surface");
    auto s = r.surface(o.surface);
    results = call_json([&](char** out) { return se_info(s.get(), out); });
  } else if (command == "ends") {
    need(o.stream, "--stream");
    auto s = r.stream(o.stream);
    results = call_json([&](char** out) { return se_ends(s.get(), o.horizon, out); });
  } else if (command == "residual") {
    need(o.k, "--k");
    if (!o.stream.empty()) {
      auto s = r.stream(o.stream);
      r.digest(o.k);
      results = call_json([&](char** out) { return se_residual_stream(s.get(), o.k.c_str(), o.horizon, out); });
      for (const auto& w : results["load_warnings"]) r.warn(o.k + ": " + w.get<std::string>());
      results.erase("load_warnings");
    } else {
      need(o.surface, "--surface or --stream");
      auto s = r.surface(o.surface);
      auto k = r.subcomplex(s.get(), o.k);
      results = call_json([&](char** out) { return se_residual(s.get(), k.get(), out); });
    }
  } else if (command == "classify") {
    if (o.surface.empty() == o.stream.empty()) usage("classify needs exactly one of --surface or --stream");
    results = Json::parse(signature_of(r, o.surface.empty() ? o.stream : o.surface, o.horizon));
  } else if (command == "compare") {
    need(o.a, "--a");
    need(o.b, "--b");
    auto a = signature_of(r, o.a, o.horizon), b = signature_of(r, o.b, o.horizon);
    results = call_json([&](char** out) { return se_compare_signatures(a.c_str(), b.c_str(), out); });
    results["a"] = Json::parse(a);
    results["b"] = Json::parse(b);
  } else if (command == "generate") {
    need(o.signature, "--signature");
    need(o.out, "--out");
    r.digest(o.signature);
    std::ifstream in(o.signature);
    std::stringstream text;
    text << in.rdbuf();
    auto g = call_json([&](char** out) { return se_generate(text.str().c_str(), out); });
    const bool surface = g.contains("surface");
    write_out(o.out, (surface ? g["surface"] : g["manifest"]).dump() + "\n");
    results = {{"description", g["description"]}, {"output", o.out}, {"kind", surface ? "surface" : "manifest"}};
    report_to_out = false;
  } else if (command == "double") {
    need(o.surface, "--surface");
    need(o.out, "--out");
    auto s = r.surface(o.surface);
    auto d = call_json([&](char** out) { return se_double(s.get(), out); });
    write_out(o.out, d["surface"].dump() + "\n");
    results = d["report"];
    results["output"] = o.out;
    report_to_out = false;
  } else if (command == "end-perm") {
    need(o.k, "--k");
    need(o.map, "--map");
    if (!o.stream.empty()) {
      auto s = r.stream(o.stream);
      r.digest(o.k);
      r.digest(o.map);
      results = call_json(
          [&](char** out) { return se_end_perm_stream(s.get(), o.k.c_str(), o.map.c_str(), o.horizon, out); });
    } else {
      need(o.surface, "--surface or --stream");
      auto s = r.surface(o.surface);
      auto k = r.subcomplex(s.get(), o.k);
      auto f = r.map(s.get(), o.map);
      results = call_json([&](char** out) { return se_end_perm(s.get(), k.get(), f.get(), out); });
    }
  } else if (command == "corpus") {
    need(o.out, "--out");
    results = call_json([&](char** out) { return se_write_corpus(o.out.c_str(), o.seed, out); });
    results = {{"directory", o.out},
               {"models", results["models"].size()},
               {"streams", results["streams"].size()},
               {"manifest", (std::filesystem::path(o.out) / "corpus.json").string()}};
    report_to_out = false;
  } else {
    usage("unknown command " + command);
  }

  auto text = render(r.report(std::move(results)), o.format);
  if (report_to_out && !o.out.empty()) {
    write_out(o.out, text);
  } else {
    std::cout << text;
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ends, residual domains, classification and end dynamics of triangulated surfaces", "surfends"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::pair<const char*, const char*>> commands = {
      {"validate", "check the surface or exhaustion axioms"},
      {"info", "counts, Euler characteristic, orientability and genus"},
      {"ends", "end tree of a stream at the horizon"},
      {"residual", "residual domains of a compact subcomplex"},
      {"classify", "classification signature"},
      {"compare", "decide whether two surfaces are homeomorphic"},
      {"generate", "model surface for a signature"},
      {"double", "double of a surface along its boundary"},
      {"end-perm", "end permutation induced by an automorphism"},
      {"corpus", "write the seeded test corpus"}};
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--surface", o.surface, "surface JSON file");
    sub->add_option("--stream", o.stream, "stream manifest JSON file");
    sub->add_option("--k", o.k, "subcomplex JSON file");
    sub->add_option("--map", o.map, "automorphism JSON file");
    sub->add_option("--a", o.a, "first surface or manifest");
    sub->add_option("--b", o.b, "second surface or manifest");
    sub->add_option("--signature", o.signature, "signature JSON file");
    sub->add_option("--horizon", o.horizon, "depth of the finite evidence")->capture_default_str();
    sub->add_option("--seed", o.seed, "corpus seed")->capture_default_str();
    sub->add_option("--out", o.out, "output path");
    sub->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, o);
  } catch (const Failure& f) {
    Json err{{"command", command}, {"error", {{"code", f.code}, {"message", f.message}}}};
    std::cerr << err.dump(2) << "\n";
    return f.exit_code;
  } catch (const std::exception& e) {
    Json err{{"command", command}, {"error", {{"code", "internal"}, {"message", e.what()}}}};
    std::cerr << err.dump(2) << "\n";
    return 2;
  }
}
