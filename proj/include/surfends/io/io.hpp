#pragma once

// File formats, digests and JSON reports. Objects are serialized with
// nlohmann::json, whose std::map storage gives sorted keys, so dumps are
// byte-stable for equal data.

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "surfends/classify/classify.hpp"
#include "surfends/dynamics/dynamics.hpp"
#include "surfends/exhaustion/end_tree.hpp"
#include "surfends/residual/residual.hpp"

namespace surfends::io {

using Json = nlohmann::json;

/// Whole file as bytes; Io error when unreadable.
std::string read_file(const std::filesystem::path& path);

/// Writes through a temporary file in the same directory and renames it into
/// place, so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Parse errors name the source, line and column (both 1-based).
Json parse_json(const std::string& text, const std::string& source);
Json load_json(const std::filesystem::path& path);

/// Lower-case hex SHA-256.
std::string sha256_hex(const std::string& bytes);

// Surfaces: {"vertices": N, "faces": [[a,b,c], ...]}.
SurfaceComplex surface_from_json(const Json& j, const std::string& source = "surface");
Json surface_to_json(const SurfaceComplex& s);

// Subcomplexes: {"faces": [...], "edges": [[u,v], ...], "vertices": [...]}, all keys optional.
struct LoadedSubcomplex {
  CellSet cells;
  Subcomplex closure;
  std::vector<std::string> warnings;  // notes cells added by taking the closure
};
LoadedSubcomplex subcomplex_from_json(const Json& j, const SurfaceComplex& s, const std::string& source = "subcomplex");
Json subcomplex_to_json(const SurfaceComplex& s, const Subcomplex& k);

// Automorphisms: {"vertex_map": [...], "domain": "all" | {"faces": [...]}}.
// Undefined vertices of a partial map are written as null.
SimplicialAutomorphism automorphism_from_json(const Json& j, const SurfaceComplex& s,
                                              const std::string& source = "map");
Json automorphism_to_json(const SimplicialAutomorphism& f);

/// Stream manifests. Builder manifests name a builder and its integer
/// parameters; chunk manifests list surface files F_1..F_n and inclusion
/// files {"vertex_map": [...]} giving F_i -> F_{i+1} on vertex ids. Relative
/// paths resolve against `base`.
ExhaustionStream stream_from_manifest(const Json& j, const std::filesystem::path& base,
                                      const std::string& source = "manifest");
Json builder_manifest(const std::string& name, const std::map<std::string, std::int64_t>& params = {});

Json signature_to_json(const Signature& sig);
Signature signature_from_json(const Json& j, const std::string& source = "signature");

// Result encoders used by the CLI reports.
Json validation_to_json(const ValidationReport& r);
Json ends_to_json(const EndsResult& e);
Json residual_to_json(const SurfaceComplex& s, const ResidualAnalysis& r, const Subcomplex& k);
Json stream_residual_to_json(const StreamResidual& r);
Json dynamics_to_json(const SurfaceComplex& s, const EndDynamics& d);

/// {"command", "inputs" (path -> sha256), "results", "warnings"}.
Json make_report(const std::string& command, const std::map<std::string, std::string>& input_digests,
                 Json results, std::vector<std::string> warnings);

/// One "path: value" line per scalar leaf, in key order.
std::string render_table(const Json& report);

/// Writes the seeded corpus under `dir` and returns its manifest. Finite
/// models cover orientable genus 0..2 and 1..3 crosscaps with 0..2 boundary
/// circles, each with a random subcomplex; the builder streams follow.
Json write_corpus(const std::filesystem::path& dir, std::uint64_t seed);

}  // namespace surfends::io
