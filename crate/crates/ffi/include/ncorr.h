#ifndef NCORR_H
#define NCORR_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum NcStatus {
  NC_STATUS_OK = 0,
  NC_STATUS_NULL_POINTER = 1,
  NC_STATUS_INVALID_ARGUMENT = 2,
  NC_STATUS_VALIDATION = 3,
  NC_STATUS_NUMERIC = 4,
  NC_STATUS_CAP_EXCEEDED = 5,
  NC_STATUS_IO = 6,
  NC_STATUS_PARSE = 7,
  NC_STATUS_PANIC = 8,
} NcStatus;

typedef enum NcMeasure {
  NC_MEASURE_D = 0,
  NC_MEASURE_G = 1,
  NC_MEASURE_DG = 2,
  NC_MEASURE_K = 3,
  NC_MEASURE_N = 4,
} NcMeasure;

/**
 * Opaque density matrix handle.
 */
typedef struct NcState NcState;

/**
 * Search and enumeration settings; start from `nc_default_options()`.
 */
typedef struct NcOptions {
  size_t n_samples;
  uint64_t seed;
  size_t refine_steps;
  double refine_step;
  bool include_deterministic_candidates;
  uint64_t partition_cap;
} NcOptions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *nc_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *nc_version(void);

struct NcOptions nc_default_options(void);

/**
 * State from subsystem dimensions and a row-major matrix given as
 * interleaved (re, im) pairs, `2 * D * D` doubles for total dimension `D`.
 *
 * # Safety
 * `dims` must point to `n_dims` values and `re_im` to `len` doubles.
 */
enum NcStatus nc_state_from_matrix(const size_t *dims,
                                   size_t n_dims,
                                   const double *re_im,
                                   size_t len,
                                   struct NcState **out);

/**
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
enum NcStatus nc_state_pseudo_entangled(double p, struct NcState **out);

/**
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
enum NcStatus nc_state_sigma(double p, struct NcState **out);

/**
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
enum NcStatus nc_state_horodecki(double b, struct NcState **out);

/**
 * Seeded random state of the given rank.
 *
 * # Safety
 * `dims` must point to `n_dims` values; `out` must be writable.
 */
enum NcStatus nc_state_random(const size_t *dims,
                              size_t n_dims,
                              size_t rank,
                              uint64_t seed,
                              struct NcState **out);

/**
 * # Safety
 * `path` must be a NUL-terminated string; `out` must be writable.
 */
enum NcStatus nc_state_load_json(const char *path, struct NcState **out);

/**
 * # Safety
 * `state` must come from an `nc_state_*` constructor; `path` must be NUL-terminated.
 */
enum NcStatus nc_state_save_json(const struct NcState *state, const char *path);

/**
 * Total Hilbert-space dimension, 0 for NULL.
 *
 * # Safety
 * `state` must be NULL or come from an `nc_state_*` constructor.
 */
size_t nc_state_dim(const struct NcState *state);

/**
 * Number of subsystems, 0 for NULL.
 *
 * # Safety
 * `state` must be NULL or come from an `nc_state_*` constructor.
 */
size_t nc_state_parties(const struct NcState *state);

/**
 * # Safety
 * `state` must be NULL or come from an `nc_state_*` constructor, and must
 * not be used afterwards.
 */
void nc_state_free(struct NcState *state);

/**
 * Evaluates one measure. `options` may be NULL for the defaults.
 *
 * # Safety
 * `state` must come from an `nc_state_*` constructor; `options` must be NULL
 * or valid; `out` must be writable.
 */
enum NcStatus nc_measure(const struct NcState *state,
                         enum NcMeasure measure,
                         const struct NcOptions *options,
                         double *out);

/**
 * Evaluates D, G, D_G, K, N into `out[0..5]` in that order.
 *
 * # Safety
 * As for `nc_measure`, with `out` pointing to 5 writable doubles.
 */
enum NcStatus nc_measure_all(const struct NcState *state,
                             const struct NcOptions *options,
                             double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* NCORR_H */
