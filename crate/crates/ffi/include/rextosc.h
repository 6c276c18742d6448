#ifndef REXTOSC_H
#define REXTOSC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum RextStatus {
  REXT_STATUS_OK = 0,
  /**
   * Bad spec, bad arguments or an unsupported model.
   */
  REXT_STATUS_INVALID_INPUT = 1,
  /**
   * The numerical oracle could not finish.
   */
  REXT_STATUS_NUMERIC_FAILURE = 2,
  /**
   * A required pointer was null.
   */
  REXT_STATUS_NULL_POINTER = 3,
  /**
   * The oracle ran but at least one level missed its tolerance.
   */
  REXT_STATUS_VERIFICATION_FAILED = 4,
  /**
   * Internal error; the library caught a panic.
   */
  REXT_STATUS_INTERNAL = 5,
} RextStatus;

/**
 * Opaque model handle.
 */
typedef struct RextModel RextModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a model from a NUL-terminated JSON spec
 * `{kind, axes: [{domain, omega, m, alpha}], gamma?, omega_z?}`.
 *
 * # Safety
 * `json` must be a valid C string and `out` a valid pointer.
 */
enum RextStatus rext_model_from_json(const char *json, struct RextModel **out);

/**
 * Releases a model; null is ignored.
 *
 * # Safety
 * `model` must come from [`rext_model_from_json`] and not be used afterwards.
 */
void rext_model_free(struct RextModel *model);

/**
 * Number of axes (1 to 3).
 *
 * # Safety
 * Pointers must be valid.
 */
enum RextStatus rext_model_dim(const struct RextModel *model, uintptr_t *out);

/**
 * Energy of the state with quantum numbers `indices[0..len]`.
 *
 * # Safety
 * `indices` must hold `len` values; other pointers must be valid.
 */
enum RextStatus rext_model_energy(const struct RextModel *model,
                                  const uintptr_t *indices,
                                  uintptr_t len,
                                  double *out);

/**
 * `V^-` summed over the axes at `point[0..len]`.
 *
 * # Safety
 * `point` must hold `len` values; other pointers must be valid.
 */
enum RextStatus rext_model_potential(const struct RextModel *model,
                                     const double *point,
                                     uintptr_t len,
                                     double *out);

/**
 * Normalized eigenfunction `indices` evaluated at `point`.
 *
 * # Safety
 * `indices` and `point` must each hold `dim` values.
 */
enum RextStatus rext_model_state(const struct RextModel *model,
                                 const uintptr_t *indices,
                                 const double *point,
                                 uintptr_t dim,
                                 double *out);

/**
 * The `k` lowest distinct energy levels, ascending, written to `out[0..k]`.
 *
 * # Safety
 * `out` must have room for `k` values.
 */
enum RextStatus rext_model_lowest_energies(const struct RextModel *model, uintptr_t k, double *out);

/**
 * Runs the numerical oracle on every axis (Numerov, 4000 points) for the
 * lowest `k` levels and writes the JSON reports to `*out_json`. Returns
 * `VerificationFailed` (with the reports still written) when any level
 * misses `tol`.
 *
 * # Safety
 * Pointers must be valid; free `*out_json` with [`rext_string_free`].
 */
enum RextStatus rext_model_verify(const struct RextModel *model,
                                  uintptr_t k,
                                  double tol,
                                  char **out_json);

/**
 * The half-line potential table as JSON.
 *
 * # Safety
 * `out_json` must be valid; free the result with [`rext_string_free`].
 */
enum RextStatus rext_table1_json(char **out_json);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void rext_string_free(char *s);

/**
 * Message of the last failed call on this thread; empty if none. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *rext_last_error_message(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REXTOSC_H */
