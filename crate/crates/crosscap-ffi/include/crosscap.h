#ifndef CROSSCAP_H
#define CROSSCAP_H

/* Generated by cbindgen from crates/crosscap-ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum CrosscapStatus {
  CROSSCAP_STATUS_OK = 0,
  CROSSCAP_STATUS_NULL_POINTER = 1,
  CROSSCAP_STATUS_INVALID_UTF8 = 2,
  CROSSCAP_STATUS_PARSE = 3,
  CROSSCAP_STATUS_DOMAIN = 4,
  CROSSCAP_STATUS_BUDGET = 5,
  CROSSCAP_STATUS_PANIC = 6,
} CrosscapStatus;

/**
 * A cross-cap drawing.
 */
typedef struct CrosscapDrawing CrosscapDrawing;

/**
 * A parsed signed cyclic permutation.
 */
typedef struct CrosscapScheme CrosscapScheme;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread, or null. The pointer
 * stays valid until the next call into this library on the same thread.
 */
const char *crosscap_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void crosscap_string_free(char *s);

/**
 * Parses a permutation such as `"1 -6 5 -4 3 -2"`.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` writable.
 */
enum CrosscapStatus crosscap_scheme_parse(const char *text, struct CrosscapScheme **out);

/**
 * Releases a scheme. Null is ignored.
 *
 * # Safety
 * `scheme` must come from [`crosscap_scheme_parse`] and not have been freed.
 */
void crosscap_scheme_free(struct CrosscapScheme *scheme);

/**
 * Number of edges.
 *
 * # Safety
 * `scheme` must be a live handle and `out` writable.
 */
enum CrosscapStatus crosscap_scheme_edges(const struct CrosscapScheme *scheme, size_t *out);

/**
 * Number of faces of the embedding.
 *
 * # Safety
 * `scheme` must be a live handle and `out` writable.
 */
enum CrosscapStatus crosscap_scheme_faces(const struct CrosscapScheme *scheme, size_t *out);

/**
 * Euler genus of the embedding surface.
 *
 * # Safety
 * `scheme` must be a live handle and `out` writable.
 */
enum CrosscapStatus crosscap_scheme_euler_genus(const struct CrosscapScheme *scheme, size_t *out);

/**
 * Whether the embedding surface is orientable.
 *
 * # Safety
 * `scheme` must be a live handle and `out` writable.
 */
enum CrosscapStatus crosscap_scheme_is_orientable(const struct CrosscapScheme *scheme, bool *out);

/**
 * Cross-cap number of the scheme.
 *
 * # Safety
 * `scheme` must be a live handle and `out` writable.
 */
enum CrosscapStatus crosscap_scheme_crosscap_number(const struct CrosscapScheme *scheme,
                                                    size_t *out);

/**
 * Canonical text form of the scheme.
 *
 * # Safety
 * `scheme` must be a live handle and `out` writable.
 */
enum CrosscapStatus crosscap_scheme_to_string(const struct CrosscapScheme *scheme, char **out);

/**
 * Classification report as JSON.
 *
 * # Safety
 * `scheme` must be a live handle and `out` writable.
 */
enum CrosscapStatus crosscap_classify_json(const struct CrosscapScheme *scheme, char **out);

/**
 * Builds a perfect drawing. When the scheme has none, `*out` is set to null
 * and `*exceptional` to true; the reason is available from
 * [`crosscap_classify_json`].
 *
 * # Safety
 * `scheme` must be a live handle; `out` and `exceptional` writable.
 */
enum CrosscapStatus crosscap_perfect_drawing(const struct CrosscapScheme *scheme,
                                             struct CrosscapDrawing **out,
                                             bool *exceptional);

/**
 * Exhaustive search for a drawing on the cross-cap number of the scheme.
 * With `fantastic`, every edge must enter a cross-cap. When the search
 * space is exhausted `*out` is null; exceeding `budget` nodes returns
 * [`CrosscapStatus::Budget`].
 *
 * # Safety
 * `scheme` must be a live handle and `out` writable.
 */
enum CrosscapStatus crosscap_search(const struct CrosscapScheme *scheme,
                                    size_t budget,
                                    bool fantastic,
                                    struct CrosscapDrawing **out);

/**
 * Reads a drawing from its JSON form.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` writable.
 */
enum CrosscapStatus crosscap_drawing_from_json(const char *json, struct CrosscapDrawing **out);

/**
 * Releases a drawing. Null is ignored.
 *
 * # Safety
 * `drawing` must come from this library and not have been freed.
 */
void crosscap_drawing_free(struct CrosscapDrawing *drawing);

/**
 * Number of cross-caps the drawing uses.
 *
 * # Safety
 * `drawing` must be a live handle and `out` writable.
 */
enum CrosscapStatus crosscap_drawing_crosscaps(const struct CrosscapDrawing *drawing, size_t *out);

/**
 * Whether the drawing realizes `scheme` with every pair of edges meeting
 * at most once in a cross-cap.
 *
 * # Safety
 * Both handles must be live and `out` writable.
 */
enum CrosscapStatus crosscap_drawing_is_perfect(const struct CrosscapDrawing *drawing,
                                                const struct CrosscapScheme *scheme,
                                                bool *out);

/**
 * JSON form of the drawing.
 *
 * # Safety
 * `drawing` must be a live handle and `out` writable.
 */
enum CrosscapStatus crosscap_drawing_to_json(const struct CrosscapDrawing *drawing, char **out);

/**
 * SVG rendering of the drawing.
 *
 * # Safety
 * `drawing` must be a live handle and `out` writable.
 */
enum CrosscapStatus crosscap_drawing_to_svg(const struct CrosscapDrawing *drawing, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CROSSCAP_H */
