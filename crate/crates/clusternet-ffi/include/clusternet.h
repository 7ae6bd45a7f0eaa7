/* C interface for the clusternet cluster-graph library. */

#ifndef CLUSTERNET_H
#define CLUSTERNET_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes shared by every entry point.
typedef enum CnStatus {
  CN_OK = 0,
  // A required pointer was null or an argument was out of range.
  CN_INVALID_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  CN_UTF8 = 2,
  CN_IO = 3,
  // State-expression or document parsing failed.
  CN_PARSE = 4,
  // The model is inconsistent (grading, homogeneity, species).
  CN_MODEL = 5,
  // An enumeration or reconstruction cap was exceeded.
  CN_CAP = 6,
  CN_OVERFLOW = 7,
  // The queried state belongs to a cluster outside the graph.
  CN_NOT_IN_GRAPH = 8,
  CN_PANIC = 9,
} CnStatus;

// Opaque model handle: a resolved model plus the basis that canonicalizes
// its states.
typedef struct CnModel {
  uint8_t _private[0];
} CnModel;

// Opaque graph handle: a reconstructed cluster graph plus its basis.
typedef struct CnGraph {
  uint8_t _private[0];
} CnGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread; empty when the
// last call succeeded. Valid until the next call on the same thread.
const char *cn_last_error(void);

// Release a string returned by this library.
//
// # Safety
// `s` must come from this library and not have been freed before.
void cn_string_free(char *s);

// Load a model document from a JSON file.
//
// # Safety
// `path` must be a valid NUL-terminated string and `out` a valid pointer.
enum CnStatus cn_model_load(const char *path, struct CnModel **out);

// Parse a model document from a JSON string.
//
// # Safety
// `json` must be a valid NUL-terminated string and `out` a valid pointer.
enum CnStatus cn_model_from_json(const char *json, struct CnModel **out);

// # Safety
// `model` must come from a `cn_model_*` constructor, freed at most once.
void cn_model_free(struct CnModel *model);

// # Safety
// `model` must be a live handle, `out` a valid pointer.
enum CnStatus cn_model_species_count(const struct CnModel *model, size_t *out);

// Do two state expressions denote states in the same cluster?
// Writes 1 or 0 to `out_equal`.
//
// # Safety
// `model` must be a live handle, the strings NUL-terminated, `out_equal`
// a valid pointer.
enum CnStatus cn_cluster_eq(const struct CnModel *model,
                            const char *state_a,
                            const char *state_b,
                            int32_t *out_equal);

// Canonical representative of a state's cluster, rendered as a state
// expression.
//
// # Safety
// `model` must be a live handle, `state` NUL-terminated, `out_expr` a
// valid pointer; free the result with [`cn_string_free`].
enum CnStatus cn_cluster_repr(const struct CnModel *model, const char *state, char **out_expr);

// Reconstruct the cluster graph reachable from the given initial state
// expressions. `exhaustive` nonzero probes every cluster member; caps of
// zero take the model's defaults.
//
// # Safety
// `model` must be a live handle; `initial` must point to `n_initial`
// NUL-terminated strings; `out` must be a valid pointer.
enum CnStatus cn_graph_build(const struct CnModel *model,
                             const char *const *initial,
                             size_t n_initial,
                             int32_t exhaustive,
                             size_t node_cap,
                             size_t arc_cap,
                             struct CnGraph **out);

// Parse a graph document from a JSON string.
//
// # Safety
// `json` must be NUL-terminated, `out` a valid pointer.
enum CnStatus cn_graph_from_json(const char *json, struct CnGraph **out);

// # Safety
// `graph` must come from a `cn_graph_*` constructor, freed at most once.
void cn_graph_free(struct CnGraph *graph);

// # Safety
// `graph` must be a live handle, `out` a valid pointer.
enum CnStatus cn_graph_node_count(const struct CnGraph *graph, size_t *out);

// # Safety
// `graph` must be a live handle, `out` a valid pointer.
enum CnStatus cn_graph_arc_count(const struct CnGraph *graph, size_t *out);

// Serialize the graph document to JSON.
//
// # Safety
// `graph` must be a live handle; free the result with [`cn_string_free`].
enum CnStatus cn_graph_to_json(const struct CnGraph *graph, char **out_json);

// Render the graph in DOT.
//
// # Safety
// `graph` must be a live handle; free the result with [`cn_string_free`].
enum CnStatus cn_graph_to_dot(const struct CnGraph *graph, char **out_dot);

// Is the cluster of `to` reachable from the cluster of `from`? Writes 1
// or 0 to `out_connected` and, when connected, the shortest arc count to
// `out_path_len` (may be null).
//
// # Safety
// `graph` must be a live handle, the strings NUL-terminated,
// `out_connected` a valid pointer.
enum CnStatus cn_connect(const struct CnGraph *graph,
                         const char *from,
                         const char *to,
                         int32_t *out_connected,
                         size_t *out_path_len);

// Count simple pathways between two clusters, stopping at `max_paths`
// (zero = unlimited). `out_truncated` (may be null) reports whether the
// cap cut the enumeration short.
//
// # Safety
// `graph` must be a live handle, the strings NUL-terminated, `out_count`
// a valid pointer.
enum CnStatus cn_count_paths(const struct CnGraph *graph,
                             const char *from,
                             const char *to,
                             size_t max_paths,
                             size_t *out_count,
                             int32_t *out_truncated);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CLUSTERNET_H */
