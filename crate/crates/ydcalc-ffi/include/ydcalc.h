#ifndef YDCALC_H
#define YDCALC_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which Hopf algebra [`yd_hopf_build`] constructs.
 */
typedef enum YdAlgebra {
  YD_ALGEBRA_H = 0,
  YD_ALGEBRA_A = 1,
  YD_ALGEBRA_GR_A = 2,
  YD_ALGEBRA_DUAL_OF_H = 3,
  YD_ALGEBRA_DOUBLE = 4,
} YdAlgebra;

/**
 * Lifting families for [`yd_lifting_dimension`].
 */
typedef enum YdFamily {
  YD_FAMILY_QUADRATIC = 0,
  YD_FAMILY_CUBIC = 1,
  YD_FAMILY_PAIR = 2,
} YdFamily;

/**
 * Result of every call.
 */
typedef enum YdStatus {
  YD_STATUS_OK = 0,
  YD_STATUS_NULL_POINTER = 1,
  /**
   * Bad parameters, unparsable text, or a value outside the supported range.
   */
  YD_STATUS_INVALID_ARGUMENT = 2,
  /**
   * An object failed a structural check.
   */
  YD_STATUS_VERIFICATION_FAILED = 3,
  YD_STATUS_CAP_EXCEEDED = 4,
  /**
   * A Rust panic was caught at the boundary.
   */
  YD_STATUS_INTERNAL = 5,
} YdStatus;

/**
 * Scalar field for one p.
 */
typedef struct YdContext YdContext;

/**
 * A finite-dimensional Hopf algebra given by structure constants.
 */
typedef struct YdHopf YdHopf;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL. Owned by the library; valid until the
 * next failing call on the same thread.
 */
const char *yd_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void yd_string_free(char *s);

/**
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle.
 */
enum YdStatus yd_context_new(size_t p, struct YdContext **out);

/**
 * # Safety
 * `ctx` must be NULL or a handle from [`yd_context_new`] not yet freed.
 */
void yd_context_free(struct YdContext *ctx);

/**
 * # Safety
 * `ctx` must be a live context handle and `out` writable.
 */
enum YdStatus yd_hopf_build(const struct YdContext *ctx, enum YdAlgebra which, struct YdHopf **out);

/**
 * Parse an algebra from the JSON written by [`yd_hopf_to_json`].
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum YdStatus yd_hopf_from_json(const char *json, struct YdHopf **out);

/**
 * # Safety
 * `h` must be NULL or a handle from this library not yet freed.
 */
void yd_hopf_free(struct YdHopf *h);

/**
 * # Safety
 * `h` must be a live handle and `out` writable.
 */
enum YdStatus yd_hopf_dim(const struct YdHopf *h, size_t *out);

/**
 * Run every Hopf axiom check; `out_pass` receives whether all passed.
 *
 * # Safety
 * `h` must be a live handle and `out_pass` writable.
 */
enum YdStatus yd_hopf_verify(const struct YdHopf *h, bool *out_pass);

/**
 * # Safety
 * `h` must be a live handle and `out` writable; free the string with [`yd_string_free`].
 */
enum YdStatus yd_hopf_to_json(const struct YdHopf *h, char **out);

/**
 * Braid equation for V_{i,j} (or K_{χ^i} when `j` < 0), and agreement with the closed
 * formula for the two-dimensional case.
 *
 * # Safety
 * `ctx` must be a live handle; out pointers writable.
 */
enum YdStatus yd_braiding_check(const struct YdContext *ctx,
                                int64_t i,
                                int64_t j,
                                size_t cap,
                                bool *out_braid,
                                bool *out_closed_form);

/**
 * Total dimension of B(V_{i,j}) (or B(K_{χ^i}) when `j` < 0) from graded dimensions up to
 * `cutoff`; `out_complete` is false when the top degree was not reached.
 *
 * # Safety
 * `ctx` must be a live handle; out pointers writable.
 */
enum YdStatus yd_nichols_total(const struct YdContext *ctx,
                               int64_t i,
                               int64_t j,
                               size_t cutoff,
                               size_t cap,
                               uint64_t *out_total,
                               bool *out_complete);

/**
 * Irreducible-word count of a lifting algebra. `mu`/`nu` are scalar texts (NULL means 0);
 * `i`, `j` are ignored for [`YdFamily::Pair`]. `out_dim` receives `u64::MAX` when the
 * algebra is infinite-dimensional.
 *
 * # Safety
 * `ctx` must be a live handle; `mu`, `nu` NULL or NUL-terminated; `out_dim` writable.
 */
enum YdStatus yd_lifting_dimension(const struct YdContext *ctx,
                                   enum YdFamily family,
                                   int64_t i,
                                   int64_t j,
                                   const char *mu,
                                   const char *nu,
                                   size_t cap,
                                   uint64_t *out_dim);

/**
 * The classification report as JSON (the same document `ydcalc classify report --format
 * json` prints).
 *
 * # Safety
 * `ctx` must be a live handle and `out` writable; free the string with [`yd_string_free`].
 */
enum YdStatus yd_classification_report_json(const struct YdContext *ctx, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* YDCALC_H */
