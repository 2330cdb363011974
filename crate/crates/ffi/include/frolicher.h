#ifndef FROLICHER_H
#define FROLICHER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum FrolicherStatus {
  FROLICHER_STATUS_OK = 0,
  FROLICHER_STATUS_NULL_POINTER = 1,
  FROLICHER_STATUS_INVALID_UTF8 = 2,
  FROLICHER_STATUS_PARSE_ERROR = 3,
  FROLICHER_STATUS_INVALID_STRUCTURE = 4,
  FROLICHER_STATUS_OUT_OF_RANGE = 5,
  FROLICHER_STATUS_NO_ZIGZAG = 6,
  FROLICHER_STATUS_INTERNAL = 7,
} FrolicherStatus;

/**
 * Page dimensions, Betti numbers and degeneration data.
 */
typedef struct FrolicherReport FrolicherReport;

/**
 * Parsed structure equations.
 */
typedef struct FrolicherStructure FrolicherStructure;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a `.lie` structure-equation file.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum FrolicherStatus frolicher_structure_parse(const char *text, struct FrolicherStructure **out);

/**
 * A built-in example (`"torus"`, `"iwasawa"`); `dim = 0` selects the
 * default generator count.
 *
 * # Safety
 * `name` must be a nul-terminated string and `out` a valid pointer.
 */
enum FrolicherStatus frolicher_structure_builtin(const char *name,
                                                 size_t dim,
                                                 struct FrolicherStructure **out);

/**
 * The algebra `X_n` with `2n` generators.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum FrolicherStatus frolicher_structure_family_xn(size_t n, struct FrolicherStructure **out);

/**
 * # Safety
 * `s` must be null or a handle from this library, not used afterwards.
 */
void frolicher_structure_free(struct FrolicherStructure *s);

/**
 * Number of (1,0)-generators.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum FrolicherStatus frolicher_structure_generators(const struct FrolicherStructure *s,
                                                    size_t *out);

/**
 * Whether `d² = 0` and the structure is integrable.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum FrolicherStatus frolicher_structure_is_valid(const struct FrolicherStructure *s, bool *out);

/**
 * Canonical `.lie` text; release with [`frolicher_string_free`].
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum FrolicherStatus frolicher_structure_serialize(const struct FrolicherStructure *s, char **out);

/**
 * Computes pages `E_0..=E_R`, `R = max_page` or `m+1` when `max_page = 0`.
 *
 * # Safety
 * `s` must be a live handle and `out` a valid pointer.
 */
enum FrolicherStatus frolicher_report_compute(const struct FrolicherStructure *s,
                                              size_t max_page,
                                              struct FrolicherReport **out);

/**
 * # Safety
 * `r` must be null or a handle from this library, not used afterwards.
 */
void frolicher_report_free(struct FrolicherReport *r);

/**
 * Degeneration page, or `0` when the computed pages do not reach it.
 *
 * # Safety
 * `r` must be a live handle and `out` a valid pointer.
 */
enum FrolicherStatus frolicher_report_degeneration_page(const struct FrolicherReport *r,
                                                        size_t *out);

/**
 * Number of computed pages (`R + 1`).
 *
 * # Safety
 * `r` must be a live handle and `out` a valid pointer.
 */
enum FrolicherStatus frolicher_report_page_count(const struct FrolicherReport *r, size_t *out);

/**
 * `dim E_page^{p,q}`.
 *
 * # Safety
 * `r` must be a live handle and `out` a valid pointer.
 */
enum FrolicherStatus frolicher_report_page_dim(const struct FrolicherReport *r,
                                               size_t page,
                                               size_t p,
                                               size_t q,
                                               size_t *out);

/**
 * Betti number `b_k`, `0 ≤ k ≤ 2m`.
 *
 * # Safety
 * `r` must be a live handle and `out` a valid pointer.
 */
enum FrolicherStatus frolicher_report_betti(const struct FrolicherReport *r, size_t k, size_t *out);

/**
 * # Safety
 * `r` must be a live handle and `out` a valid pointer.
 */
enum FrolicherStatus frolicher_report_euler(const struct FrolicherReport *r, int64_t *out);

/**
 * The JSON report; release with [`frolicher_string_free`].
 *
 * # Safety
 * `r` must be a live handle and `out` a valid pointer.
 */
enum FrolicherStatus frolicher_report_json(const struct FrolicherReport *r, char **out);

/**
 * Looks for a zig-zag of `length` from the form `start`. On success
 * `reached = length`; when none exists returns
 * [`FrolicherStatus::NoZigzag`] with `reached` set to the page the class
 * lives to.
 *
 * # Safety
 * `s` must be a live handle, `start` a nul-terminated string and
 * `reached` a valid pointer.
 */
enum FrolicherStatus frolicher_zigzag_reach(const struct FrolicherStructure *s,
                                            const char *start,
                                            size_t length,
                                            size_t *reached);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `text` must be null or a string from this library, not used afterwards.
 */
void frolicher_string_free(char *text);

/**
 * Description of the last failure on this thread; empty after a
 * successful call. Valid until the next call into the library.
 */
const char *frolicher_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FROLICHER_H */
