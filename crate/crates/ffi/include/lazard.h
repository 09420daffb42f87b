#ifndef LAZARD_H
#define LAZARD_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LazardStatus {
  LAZARD_STATUS_OK = 0,
  LAZARD_STATUS_NULL_POINTER = 1,
  LAZARD_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed document or unknown corpus entry.
   */
  LAZARD_STATUS_PARSE = 3,
  /**
   * Well-formed input that is not a valid algebra or fails a hypothesis.
   */
  LAZARD_STATUS_INVALID_INPUT = 4,
  /**
   * A verification check disagreed.
   */
  LAZARD_STATUS_CHECK_FAILED = 5,
  /**
   * The output buffer is too small; the required length was written.
   */
  LAZARD_STATUS_BUFFER_TOO_SMALL = 6,
  /**
   * Internal panic caught at the boundary.
   */
  LAZARD_STATUS_PANIC = 7,
} LazardStatus;

/**
 * Opaque algebra handle.
 */
typedef struct LazardAlgebra LazardAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a structure-constant JSON document.
 *
 * # Safety
 * `json` must be a nul-terminated string and `out` a valid pointer.
 */
enum LazardStatus lazard_algebra_from_json(const char *json, struct LazardAlgebra **out);

/**
 * Builds a corpus entry such as `heisenberg_gen(1)` over `Z/p^k`.
 *
 * # Safety
 * `spec` must be a nul-terminated string and `out` a valid pointer.
 */
enum LazardStatus lazard_algebra_from_corpus(const char *spec,
                                             uint64_t p,
                                             uint32_t k,
                                             struct LazardAlgebra **out);

/**
 * # Safety
 * `algebra` must be null or a handle returned by this library, not yet freed.
 */
void lazard_algebra_free(struct LazardAlgebra *algebra);

/**
 * Rank of the algebra, or 0 for a null handle.
 *
 * # Safety
 * `algebra` must be null or a live handle.
 */
size_t lazard_algebra_rank(const struct LazardAlgebra *algebra);

/**
 * Betti numbers of `g/pg` with trivial coefficients, `rank + 1` values.
 * `len` receives the required length; if `cap` is smaller nothing is
 * written to `out` and `BufferTooSmall` is returned.
 *
 * # Safety
 * `algebra` must be a live handle, `len` valid, and `out` valid for `cap`
 * writes.
 */
enum LazardStatus lazard_betti(const struct LazardAlgebra *algebra,
                               size_t *out,
                               size_t cap,
                               size_t *len);

/**
 * Runs the group-side and Lie-side recursions against the direct
 * computation. Returns `CheckFailed` on disagreement. If `report_json` is
 * non-null it receives the JSON report, to be released with
 * [`lazard_string_free`].
 *
 * # Safety
 * `algebra` must be a live handle; `report_json` null or valid.
 */
enum LazardStatus lazard_compare(const struct LazardAlgebra *algebra, char **report_json);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void lazard_string_free(char *s);

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next library call on the same thread.
 */
const char *lazard_last_error(void);

/**
 * Library version as a static string.
 */
const char *lazard_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LAZARD_H */
