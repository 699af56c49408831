#ifndef PADIC_SPECTRAL_H
#define PADIC_SPECTRAL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stddef.h>
#include <stdint.h>

/**
 * Status codes. `PS_OK` is zero; everything else is a failure.
 */
typedef enum PsStatus {
  PS_OK = 0,
  PS_NULL_POINTER = 1,
  PS_INVALID_ARGUMENT = 2,
  PS_NOT_PRIME = 3,
  PS_INVALID_PRECISION = 4,
  PS_OUTSIDE_UNIT_BALL = 5,
  PS_DIMENSION_MISMATCH = 6,
  PS_NOT_INVERTIBLE = 7,
  PS_NOT_HERMITE = 8,
  PS_NOT_TEICHMULLER = 9,
  PS_PERIOD_EXCEEDED = 10,
  PS_BUDGET_EXHAUSTED = 11,
  PS_MATH_ERROR = 12,
  /**
   * A command ran and rejected its input; the document is still returned.
   */
  PS_REJECTED = 13,
  /**
   * A command could not parse its arguments or document.
   */
  PS_MALFORMED = 14,
  PS_PANIC = 99,
} PsStatus;

/**
 * Precision context: prime, precision and period cap.
 */
typedef struct PsContext PsContext;

/**
 * Square matrix over the p-adic integers at the precision of its context.
 */
typedef struct PsMatrix PsMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *ps_last_error(void);

/**
 * Creates a context for `Z_p` modulo `p^m`, searching periods up to `n_max`
 * (0 selects the default cap).
 *
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
enum PsStatus ps_context_new(uint64_t p, uint32_t m, uint32_t n_max, struct PsContext **out);

/**
 * # Safety
 * `ctx` must come from [`ps_context_new`] and not have been freed; null is ignored.
 */
void ps_context_free(struct PsContext *ctx);

/**
 * Teichmüller lift of `residue` in `0..p`, written as its residue modulo `p^m`.
 *
 * # Safety
 * `ctx` must be a live context and `out` writable.
 */
enum PsStatus ps_teichmuller_lift(const struct PsContext *ctx, uint64_t residue, uint64_t *out);

/**
 * Builds an `n x n` matrix from `n * n` signed integers in row-major order.
 *
 * # Safety
 * `entries` must point to `n * n` readable values and `out` must be writable.
 */
enum PsStatus ps_matrix_from_integers(const struct PsContext *ctx,
                                      uintptr_t n,
                                      const int64_t *entries,
                                      struct PsMatrix **out);

/**
 * # Safety
 * `mat` must be a live matrix handle; null is ignored.
 */
void ps_matrix_free(struct PsMatrix *mat);

/**
 * # Safety
 * `mat` must be a live matrix handle and `out` writable.
 */
enum PsStatus ps_matrix_dim(const struct PsMatrix *mat, uintptr_t *out);

/**
 * Entry `(i, j)` as a residue modulo `p^m`. Fails with `PS_OUTSIDE_UNIT_BALL`
 * for entries of negative valuation.
 *
 * # Safety
 * `mat` must be a live matrix handle and `out` writable.
 */
enum PsStatus ps_matrix_entry(const struct PsMatrix *mat, uintptr_t i, uintptr_t j, uint64_t *out);

/**
 * Writes 1 to `out` when the matrices agree at precision, 0 otherwise.
 *
 * # Safety
 * Both handles must be live and `out` writable.
 */
enum PsStatus ps_matrix_equal(const struct PsMatrix *a, const struct PsMatrix *b, int32_t *out);

/**
 * # Safety
 * Both handles must be live and `out` writable.
 */
enum PsStatus ps_matrix_mul(const struct PsMatrix *a,
                            const struct PsMatrix *b,
                            struct PsMatrix **out);

/**
 * Splits `mat` into a semisimple part and a topologically nilpotent part,
 * searching Frobenius periods up to `n_max`.
 *
 * # Safety
 * `mat` must be live; `semisimple` and `nilpotent` must be writable.
 */
enum PsStatus ps_jordan(const struct PsMatrix *mat,
                        uint32_t n_max,
                        struct PsMatrix **semisimple,
                        struct PsMatrix **nilpotent);

/**
 * Hermite digit expansion of `mat` with period 1. Digit `k` is written to
 * `digits[k]` for `k < capacity`; `count` receives the total number of digits.
 *
 * # Safety
 * `mat` must be live, `digits` must have room for `capacity` handles (it may
 * be null when `capacity` is 0) and `count` must be writable.
 */
enum PsStatus ps_hermite_digits(const struct PsMatrix *mat,
                                struct PsMatrix **digits,
                                uintptr_t capacity,
                                uintptr_t *count);

/**
 * Runs a command of the command-line tool. `argv` holds `argc` arguments
 * after the program name, e.g. `{"measure", "--depth", "2"}`. `document`
 * is an optional JSON problem used in place of `--in`.
 *
 * On `PS_OK` and `PS_REJECTED` the JSON document is written to `out` and must
 * be released with [`ps_string_free`]. On `PS_MALFORMED` nothing is written
 * and [`ps_last_error`] names the offending field.
 *
 * # Safety
 * `argv` must hold `argc` NUL-terminated strings, `document` must be null or
 * NUL-terminated, and `out` must be writable.
 */
enum PsStatus ps_run(const char *const *argv, uintptr_t argc, const char *document, char **out);

/**
 * # Safety
 * `s` must come from this library; null is ignored.
 */
void ps_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PADIC_SPECTRAL_H */
