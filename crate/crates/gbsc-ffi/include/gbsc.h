/* C interface for the gbsc graph coloring library. */

#ifndef GBSC_H
#define GBSC_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Success.
 */
#define GBSC_OK 0

/**
 * A required pointer argument was null.
 */
#define GBSC_ERR_NULL -1

/**
 * The operation itself failed; see `gbsc_last_error`.
 */
#define GBSC_ERR_FAILED -2

/**
 * An argument was malformed (bad UTF-8, unknown method name).
 */
#define GBSC_ERR_ARG -3

/**
 * An internal panic was caught at the boundary.
 */
#define GBSC_ERR_PANIC -4

/**
 * A total vertex coloring (opaque).
 */
typedef struct GbscColoring GbscColoring;

/**
 * An undirected simple graph (opaque).
 */
typedef struct GbscGraph GbscGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the calling thread's most recent error message (NUL-terminated)
 * into `buf` and returns the byte length the full message needs, including
 * the terminator. Call with `cap = 0` to size a buffer; a return value not
 * larger than `cap` means the copy is complete.
 *
 * # Safety
 * `buf` must point to at least `cap` writable bytes, or be null with
 * `cap = 0`.
 */
uintptr_t gbsc_last_error(char *buf, uintptr_t cap);

/**
 * Creates an empty graph on `n` vertices. Returns null only on internal
 * panic. Free with [`gbsc_graph_free`].
 */
struct GbscGraph *gbsc_graph_new(uint32_t n);

/**
 * Parses a NUL-terminated DIMACS text. Returns null on failure (see
 * [`gbsc_last_error`]). Free with [`gbsc_graph_free`].
 *
 * # Safety
 * `text` must be a valid NUL-terminated string.
 */
struct GbscGraph *gbsc_graph_from_dimacs(const char *text);

/**
 * Inserts the undirected edge (u, v).
 *
 * # Safety
 * `g` must be a live handle from this library.
 */
int32_t gbsc_graph_add_edge(struct GbscGraph *g, uint32_t u, uint32_t v);

/**
 * Number of vertices.
 *
 * # Safety
 * `g` must be a live handle from this library.
 */
uint32_t gbsc_graph_vertex_count(const struct GbscGraph *g);

/**
 * Number of edges.
 *
 * # Safety
 * `g` must be a live handle from this library.
 */
uint64_t gbsc_graph_edge_count(const struct GbscGraph *g);

/**
 * Serializes the graph as DIMACS text via the two-call pattern: returns
 * the byte length needed including the NUL terminator, copying up to `cap`
 * bytes into `buf` when it is non-null.
 *
 * # Safety
 * `g` must be a live handle; `buf` must point to `cap` writable bytes, or
 * be null with `cap = 0`.
 */
uintptr_t gbsc_graph_to_dimacs(const struct GbscGraph *g, char *buf, uintptr_t cap);

/**
 * Releases a graph handle; null is ignored.
 *
 * # Safety
 * `g` must be null or a live handle, and must not be used afterwards.
 */
void gbsc_graph_free(struct GbscGraph *g);

/**
 * Colors the graph with the named method ("dsatur", "rlf", "sli" or
 * "gbsc"); `seed` drives the sampling pipeline and is ignored by the
 * deterministic heuristics. On success stores a coloring handle in `out`.
 *
 * # Safety
 * `g` must be a live handle, `method` a valid NUL-terminated string, and
 * `out` a valid pointer.
 */
int32_t gbsc_color_graph(const struct GbscGraph *g,
                         const char *method,
                         uint64_t seed,
                         struct GbscColoring **out);

/**
 * Computes the exact chromatic number by branch-and-bound within
 * `time_limit_ms`. Stores the chromatic number (or, on timeout, the best
 * upper bound) in `out_chi` and the timeout flag (0/1) in `out_timed_out`;
 * either output pointer may be null if unwanted.
 *
 * # Safety
 * `g` must be a live handle; non-null outputs must be valid pointers.
 */
int32_t gbsc_exact_chromatic(const struct GbscGraph *g,
                             uint64_t time_limit_ms,
                             uint32_t *out_chi,
                             int32_t *out_timed_out);

/**
 * Number of distinct colors used.
 *
 * # Safety
 * `c` must be a live handle from this library.
 */
uint32_t gbsc_coloring_palette(const struct GbscColoring *c);

/**
 * Stores vertex `v`'s color in `out_color`.
 *
 * # Safety
 * `c` must be a live handle and `out_color` a valid pointer.
 */
int32_t gbsc_coloring_color_of(const struct GbscColoring *c, uint32_t v, uint32_t *out_color);

/**
 * Releases a coloring handle; null is ignored.
 *
 * # Safety
 * `c` must be null or a live handle, and must not be used afterwards.
 */
void gbsc_coloring_free(struct GbscColoring *c);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GBSC_H */
