#ifndef SKEIN_H
#define SKEIN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define SKEIN_CONVENTION_MODERN 0

#define SKEIN_CONVENTION_OLD 1

typedef enum SkeinStatus {
  SKEIN_STATUS_OK = 0,
  SKEIN_STATUS_NULL_POINTER = 1,
  SKEIN_STATUS_INVALID_UTF8 = 2,
  SKEIN_STATUS_PARSE_ERROR = 3,
  SKEIN_STATUS_UNKNOWN_ALGEBRA = 4,
  SKEIN_STATUS_INVALID_ARGUMENT = 5,
  SKEIN_STATUS_EVALUATION_ERROR = 6,
  SKEIN_STATUS_PANIC = 7,
} SkeinStatus;

/**
 * Opaque diagram handle.
 */
typedef struct SkeinDiagram SkeinDiagram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a planar diagram code such as `X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)`.
 *
 * # Safety
 * `pd` must be a nul-terminated string and `out` a valid pointer.
 */
enum SkeinStatus skein_diagram_from_pd(const char *pd, struct SkeinDiagram **out);

/**
 * Closes a braid word such as `3: 1 -2 1 -2`.
 *
 * # Safety
 * `braid` must be a nul-terminated string and `out` a valid pointer.
 */
enum SkeinStatus skein_diagram_from_braid(const char *braid, struct SkeinDiagram **out);

/**
 * # Safety
 * `d` must come from `skein_diagram_from_*` and not be freed twice.
 */
void skein_diagram_free(struct SkeinDiagram *d);

/**
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum SkeinStatus skein_diagram_crossing_count(const struct SkeinDiagram *d, size_t *out);

/**
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum SkeinStatus skein_diagram_component_count(const struct SkeinDiagram *d, size_t *out);

/**
 * Normalized PD code of the diagram. Free the result with
 * `skein_string_free`.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum SkeinStatus skein_diagram_to_pd(const struct SkeinDiagram *d, char **out);

/**
 * Sixteen hex digits identifying the diagram up to relabeling.
 *
 * # Safety
 * `d` must be a live handle and `out` a valid pointer.
 */
enum SkeinStatus skein_diagram_key(const struct SkeinDiagram *d, char **out);

/**
 * Value of the invariant in the named algebra (`components`, `mod3`,
 * `P2`, `P3`, `linking` or `quasi`), as text. `convention` is
 * `SKEIN_CONVENTION_MODERN` or `SKEIN_CONVENTION_OLD`. Free the result
 * with `skein_string_free`.
 *
 * # Safety
 * `d` must be a live handle, `algebra` a nul-terminated string and `out` a
 * valid pointer.
 */
enum SkeinStatus skein_invariant(const struct SkeinDiagram *d,
                                 const char *algebra,
                                 int32_t convention,
                                 char **out);

/**
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void skein_string_free(char *s);

/**
 * Message for the last failure on this thread. The pointer stays valid
 * until the next failing call on the same thread.
 */
const char *skein_last_error(void);

/**
 * Static description of a status code.
 */
const char *skein_status_str(enum SkeinStatus s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SKEIN_H */
