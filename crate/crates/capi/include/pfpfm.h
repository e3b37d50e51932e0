#ifndef PFPFM_H
#define PFPFM_H

/* Generated from the pfp-fm-capi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PfpFmStatus {
  PFP_FM_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  PFP_FM_STATUS_NULL_ARGUMENT = 1,
  /**
   * Parameters are out of range (w, p, path encoding, pattern length).
   */
  PFP_FM_STATUS_INVALID_ARGUMENT = 2,
  /**
   * The text cannot be indexed (empty, contains 0x00, or too large).
   */
  PFP_FM_STATUS_BAD_TEXT = 3,
  /**
   * Construction failed after validation.
   */
  PFP_FM_STATUS_BUILD_FAILED = 4,
  /**
   * The index file is missing, unreadable, or corrupt.
   */
  PFP_FM_STATUS_BAD_INDEX_FILE = 5,
  /**
   * File system error.
   */
  PFP_FM_STATUS_IO_FAILED = 6,
  /**
   * An internal invariant failed; the handle is untouched.
   */
  PFP_FM_STATUS_PANICKED = 7,
} PfpFmStatus;

/**
 * Opaque index handle.
 */
typedef struct PfpFmIndex PfpFmIndex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds an index over `text` with hashed triggers of window length `w` and
 * modulus `p`, storing the new handle in `*out`.
 *
 * # Safety
 * `text` must point to `text_len` readable bytes and `out` must be valid
 * for writing one pointer.
 */
enum PfpFmStatus pfpfm_build(const uint8_t *text,
                             size_t text_len,
                             size_t w,
                             uint64_t p,
                             uint64_t seed,
                             struct PfpFmIndex **out);

/**
 * Loads an index from the NUL-terminated path `path` into `*out`.
 *
 * # Safety
 * `path` must be a valid NUL-terminated string and `out` must be valid for
 * writing one pointer.
 */
enum PfpFmStatus pfpfm_load(const char *path, struct PfpFmIndex **out);

/**
 * Writes `index` to the NUL-terminated path `path`.
 *
 * # Safety
 * `index` must be a live handle from this library and `path` a valid
 * NUL-terminated string.
 */
enum PfpFmStatus pfpfm_save(const struct PfpFmIndex *index, const char *path);

/**
 * Counts occurrences of `pattern` using the accelerated two-level search,
 * storing the result in `*out_count`. Patterns containing bytes absent from
 * the text count zero.
 *
 * # Safety
 * `index` must be a live handle, `pattern` must point to `pattern_len`
 * readable bytes (or be null with `pattern_len == 0`), and `out_count`
 * must be valid for writing.
 */
enum PfpFmStatus pfpfm_count(const struct PfpFmIndex *index,
                             const uint8_t *pattern,
                             size_t pattern_len,
                             uint64_t *out_count);

/**
 * Counts occurrences of `pattern` using plain single-level backward search.
 *
 * # Safety
 * Same contract as `pfpfm_count`.
 */
enum PfpFmStatus pfpfm_count_baseline(const struct PfpFmIndex *index,
                                      const uint8_t *pattern,
                                      size_t pattern_len,
                                      uint64_t *out_count);

/**
 * Releases a handle. Null is a no-op; handles must not be used after this.
 *
 * # Safety
 * `index` must be null or a live handle from this library.
 */
void pfpfm_free(struct PfpFmIndex *index);

/**
 * Returns a static name for a status code, for error messages.
 */
const char *pfpfm_status_name(enum PfpFmStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PFPFM_H */
