#ifndef SURFENDS_SURFENDS_H
#define SURFENDS_SURFENDS_H

/* C interface to the surfends library.
 *
 * Objects are opaque handles released with their *_free function. Every
 * call returns an se_status; on failure se_last_error() describes the
 * problem for the calling thread until its next failing call. Strings
 * returned through char** outputs are owned by the caller and released
 * with se_string_free. Analyses return JSON documents with sorted keys. */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(SURFENDS_BUILDING_LIBRARY)
#define SE_API __attribute__((visibility("default")))
#else
#define SE_API
#endif

typedef enum se_status {
  SE_OK = 0,
  SE_ERR_DOMAIN = 1,           /* the input is well formed but the operation does not apply */
  SE_ERR_IO = 2,               /* a file could not be read or written */
  SE_ERR_PARSE = 3,            /* ill-formed JSON or a file that breaks its format */
  SE_ERR_INVALID_ARGUMENT = 4, /* bad parameter, including null handles */
  SE_ERR_INTERNAL = 5
} se_status;

typedef struct se_surface se_surface;
typedef struct se_stream se_stream;
typedef struct se_subcomplex se_subcomplex;
typedef struct se_map se_map;

SE_API const char* se_last_error(void);
SE_API const char* se_version(void);
SE_API void se_string_free(char* s);

/* Surfaces: {"vertices": N, "faces": [[a,b,c], ...]}. */
SE_API se_status se_surface_load(const char* path, se_surface** out);
SE_API se_status se_surface_from_json(const char* text, se_surface** out);
SE_API void se_surface_free(se_surface* s);
SE_API se_status se_surface_counts(const se_surface* s, int64_t* vertices, int64_t* edges, int64_t* faces);
SE_API se_status se_surface_to_json(const se_surface* s, char** out);

/* Stream manifests; relative chunk paths resolve against the manifest's directory. */
SE_API se_status se_stream_load(const char* path, se_stream** out);
SE_API se_status se_stream_from_json(const char* text, const char* base_dir, se_stream** out);
SE_API void se_stream_free(se_stream* s);

/* Subcomplex files, closed on load. Warnings (JSON array) may be null. */
SE_API se_status se_subcomplex_load(const se_surface* s, const char* path, se_subcomplex** out, char** warnings);
SE_API void se_subcomplex_free(se_subcomplex* k);

/* Automorphism files: {"vertex_map": [...], "domain": "all" | {"faces": [...]}}. */
SE_API se_status se_map_load(const se_surface* s, const char* path, se_map** out);
SE_API void se_map_free(se_map* f);

/* Analyses. Each writes one JSON document. */
SE_API se_status se_validate_surface(const se_surface* s, char** out);
SE_API se_status se_validate_stream(const se_stream* s, int32_t horizon, char** out);
SE_API se_status se_info(const se_surface* s, char** out);
SE_API se_status se_ends(const se_stream* s, int32_t horizon, char** out);
SE_API se_status se_residual(const se_surface* s, const se_subcomplex* k, char** out);
/* K is read from a subcomplex file against F_{horizon+1} of the stream. */
SE_API se_status se_residual_stream(const se_stream* s, const char* k_path, int32_t horizon, char** out);
SE_API se_status se_signature_surface(const se_surface* s, char** out);
SE_API se_status se_signature_stream(const se_stream* s, int32_t horizon, char** out);
SE_API se_status se_compare_signatures(const char* a_json, const char* b_json, char** out);
/* Writes either {"surface": ...} or {"manifest": ...} plus a description. */
SE_API se_status se_generate(const char* signature_json, char** out);
/* {"surface": double, "report": {...}}. */
SE_API se_status se_double(const se_surface* s, char** out);
SE_API se_status se_end_perm(const se_surface* s, const se_subcomplex* k, const se_map* f, char** out);
/* Streams use a declared symmetry named in the map file as {"symmetry": name}. */
SE_API se_status se_end_perm_stream(const se_stream* s, const char* k_path, const char* map_path, int32_t horizon,
                                    char** out);

/* Utilities. */
SE_API se_status se_sha256_file(const char* path, char** hex);
SE_API se_status se_write_file_atomic(const char* path, const char* content);
SE_API se_status se_write_corpus(const char* dir, uint64_t seed, char** manifest);

#ifdef __cplusplus
}
#endif

#endif
