#ifndef SELFSIM_GREEN_H
#define SELFSIM_GREEN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes shared by every entry point.
 */
typedef enum SsgStatus {
  SSG_STATUS_OK = 0,
  SSG_STATUS_NULL_POINTER = 1,
  SSG_STATUS_PARSE = 2,
  SSG_STATUS_INVALID_CELL = 3,
  SSG_STATUS_INVALID_ARGUMENT = 4,
  SSG_STATUS_BUDGET_EXCEEDED = 5,
  SSG_STATUS_INTERNAL = 6,
} SsgStatus;

/**
 * Opaque cell handle.
 */
typedef struct SsgCell SsgCell;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until
 * the next failing call on the same thread.
 */
const char *ssg_last_error(void);

/**
 * Library version as a static string.
 */
const char *ssg_version(void);

/**
 * Parses and validates a cell in the text grammar.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a writable pointer.
 */
enum SsgStatus ssg_cell_parse(const char *text, struct SsgCell **out);

/**
 * One of the built-in cells: diamond, path2, sierpinski, k4_corners.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a writable pointer.
 */
enum SsgStatus ssg_cell_builtin(const char *name, struct SsgCell **out);

/**
 * # Safety
 * `cell` must come from this library and not be freed twice. Null is ignored.
 */
void ssg_cell_free(struct SsgCell *cell);

/**
 * Vertex count and branching number.
 *
 * # Safety
 * `cell` must be a live handle; `vertices` and `theta` writable pointers.
 */
enum SsgStatus ssg_cell_shape(const struct SsgCell *cell, size_t *vertices, size_t *theta);

/**
 * `f`, `d`, `r`, their radii and expansions through `z^order`.
 *
 * # Safety
 * `cell` must be a live handle and `out` a writable pointer.
 */
enum SsgStatus ssg_functions_json(const struct SsgCell *cell, size_t order, char **out);

/**
 * Green's function coefficients through `z^order`, as rational strings.
 *
 * # Safety
 * `cell` must be a live handle and `out` a writable pointer.
 */
enum SsgStatus ssg_green_series_json(const struct SsgCell *cell, size_t order, char **out);

/**
 * # Safety
 * `cell` must be a live handle and `out` a writable pointer.
 */
enum SsgStatus ssg_invariants_json(const struct SsgCell *cell, char **out);

/**
 * # Safety
 * `cell` must be a live handle and `out` a writable pointer.
 */
enum SsgStatus ssg_classify_json(const struct SsgCell *cell, char **out);

/**
 * Full property suite; the edge budget comes from `SSGREEN_EDGE_BUDGET`.
 *
 * # Safety
 * `cell` must be a live handle and `out` a writable pointer.
 */
enum SsgStatus ssg_verify_json(const struct SsgCell *cell, char **out);

/**
 * Exact `n`-step return probabilities on the level-`level` approximant.
 *
 * # Safety
 * `cell` must be a live handle and `out` a writable pointer.
 */
enum SsgStatus ssg_return_probs_json(const struct SsgCell *cell,
                                     size_t level,
                                     size_t n_max,
                                     char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice. Null is ignored.
 */
void ssg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SELFSIM_GREEN_H */
