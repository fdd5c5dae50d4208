#ifndef GBSN_H
#define GBSN_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GbsnStatus {
  GBSN_STATUS_OK = 0,
  GBSN_STATUS_NULL_POINTER = 1,
  GBSN_STATUS_INVALID_UTF8 = 2,
  GBSN_STATUS_PARSE_ERROR = 3,
  GBSN_STATUS_INVALID_GRAPH = 4,
  GBSN_STATUS_DOMAIN_ERROR = 5,
  GBSN_STATUS_PANIC = 6,
} GbsnStatus;

/**
 * A validated graph of groups.
 */
typedef struct GbsnGraph GbsnGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses and validates a graph in the text format. On success `*out`
 * receives a handle to free with [`gbsn_graph_free`].
 *
 * # Safety
 * `source` must be a nul-terminated string and `out` a valid pointer.
 */
enum GbsnStatus gbsn_graph_parse(const char *source, struct GbsnGraph **out);

/**
 * One of `leary-minasyan`, `bs` (phi = [[2]]) or `identity-loop` (rank 2).
 *
 * # Safety
 * `name` must be a nul-terminated string and `out` a valid pointer.
 */
enum GbsnStatus gbsn_graph_builtin(const char *name, struct GbsnGraph **out);

/**
 * # Safety
 * `g` must be null or a handle from this library that was not yet freed.
 */
void gbsn_graph_free(struct GbsnGraph *g);

/**
 * Rank of the vertex and edge groups, or 0 for a null handle.
 *
 * # Safety
 * `g` must be null or a live handle.
 */
size_t gbsn_graph_rank(const struct GbsnGraph *g);

/**
 * The graph in the text format accepted by [`gbsn_graph_parse`].
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum GbsnStatus gbsn_graph_to_text(const struct GbsnGraph *g, char **out);

/**
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum GbsnStatus gbsn_presentation_json(const struct GbsnGraph *g, char **out);

/**
 * `cap` bounds the finite-group closure; 0 selects the default.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum GbsnStatus gbsn_monodromy_json(const struct GbsnGraph *g, uint64_t cap, char **out);

/**
 * VRC, LERF, residual finiteness and Grothendieck rigidity verdicts.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum GbsnStatus gbsn_properties_json(const struct GbsnGraph *g, uint64_t cap, char **out);

/**
 * Normal form of `word` (e.g. `t a1^2 t^-1`); the graph must be an
 * ascending HNN extension.
 *
 * # Safety
 * `g` must be a live handle, `word` a nul-terminated string and `out` a
 * valid pointer.
 */
enum GbsnStatus gbsn_normalize_json(const struct GbsnGraph *g, const char *word, char **out);

/**
 * The level quotient `G_l` at the prime `p`.
 *
 * # Safety
 * `g` must be a live handle and `out` a valid pointer.
 */
enum GbsnStatus gbsn_level_quotient_json(const struct GbsnGraph *g,
                                         uint64_t p,
                                         uint32_t level,
                                         char **out);

/**
 * Searches the default budget for a finite quotient in which the subgroup
 * generated by `generators` (one word per line, `#` comments) has a proper
 * image.
 *
 * # Safety
 * `g` must be a live handle, `generators` a nul-terminated string and
 * `out` a valid pointer.
 */
enum GbsnStatus gbsn_certificate_search_json(const struct GbsnGraph *g,
                                             const char *generators,
                                             char **out);

/**
 * Message for the last failed call on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *gbsn_last_error(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void gbsn_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GBSN_H */
