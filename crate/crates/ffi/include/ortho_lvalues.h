#ifndef ORTHO_LVALUES_H
#define ORTHO_LVALUES_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum OlStatus {
  OL_STATUS_OK = 0,
  OL_STATUS_NULL_ARGUMENT = 1,
  OL_STATUS_INVALID_UTF8 = 2,
  OL_STATUS_PARSE = 3,
  OL_STATUS_INVALID_INPUT = 4,
  OL_STATUS_PRECONDITION = 5,
  OL_STATUS_POLE = 6,
  OL_STATUS_INTERNAL = 7,
} OlStatus;

/**
 * Unramified Satake parameters at one place.
 */
typedef struct OlSatake OlSatake;

/**
 * Coefficient weight together with the character data `(d, eps)`.
 */
typedef struct OlWeight OlWeight;

/**
 * Dimensions and degrees for `(n, r_F)`.
 */
typedef struct OlDims {
  uint64_t dim_sg;
  uint64_t dim_boundary;
  uint64_t dim_sm;
  uint64_t dim_scirc_m;
  uint64_t dim_up;
  uint64_t q0;
  uint64_t q_m;
  uint64_t q_b;
  uint64_t q_t;
  uint64_t frak_q_b;
  uint64_t frak_q_t;
} OlDims;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Description of the last failure on this thread. The pointer stays valid
 * until the next failing call on the same thread; do not free it.
 */
const char *ol_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void ol_string_free(char *s);

/**
 * Parses `mu` (embeddings separated by `;`, entries by `,`) and the parity
 * list `eps` (`"0,1"`; null means all zero) into a weight handle.
 *
 * # Safety
 * `mu` and a non-null `eps` must be NUL-terminated; `out` must be writable.
 */
enum OlStatus ol_weight_new(const char *mu, int64_t d, const char *eps, struct OlWeight **out);

/**
 * # Safety
 * `w` must be null or a handle from [`ol_weight_new`] not yet freed.
 */
void ol_weight_free(struct OlWeight *w);

/**
 * The critical set is the integer interval `[*lo, *hi]`.
 *
 * # Safety
 * `w` must be a live handle; `lo` and `hi` must be writable.
 */
enum OlStatus ol_critical_set(const struct OlWeight *w, int64_t *lo, int64_t *hi);

/**
 * Whether `-n` and `1-n` are both critical, with the three equivalent
 * conditions cross-checked; a disagreement is reported as `Internal`.
 *
 * # Safety
 * `w` must be a live handle; `holds` must be writable.
 */
enum OlStatus ol_lemma_holds(const struct OlWeight *w, bool *holds);

/**
 * `L_inf(-n) / L_inf(1-n)` as text `"a/b * pi^(h/2)"`.
 *
 * # Safety
 * `w` must be a live handle; `out` must be writable.
 */
enum OlStatus ol_ratio_l_inf(const struct OlWeight *w, char **out);

/**
 * # Safety
 * `out` must be writable.
 */
enum OlStatus ol_dims(uint64_t n, uint64_t r_f, struct OlDims *out);

/**
 * Satake parameters from a comma-separated rational list, e.g. `"1,1/2"`.
 *
 * # Safety
 * `thetas` and `theta_chi` must be NUL-terminated; `out` must be writable.
 */
enum OlStatus ol_satake_new(const char *thetas,
                            const char *theta_chi,
                            uint64_t q,
                            struct OlSatake **out);

/**
 * # Safety
 * `p` must be null or a handle from [`ol_satake_new`] not yet freed.
 */
void ol_satake_free(struct OlSatake *p);

/**
 * `L_v(s)` as a rational `"a/b"`; a pole returns `Pole` and leaves `out` alone.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum OlStatus ol_satake_local_l(const struct OlSatake *p, int64_t s, char **out);

/**
 * `L_v(s) / L_v(1 + s)` as a rational `"a/b"`.
 *
 * # Safety
 * `p` must be a live handle; `out` must be writable.
 */
enum OlStatus ol_satake_gk_ratio(const struct OlSatake *p, int64_t s, char **out);

/**
 * Runs the command-line front end on `args` (without a program name) and
 * returns the report JSON through `out_json` (empty when the arguments were
 * rejected) and the process exit code through `exit_code`.
 *
 * # Safety
 * `args` must point to `n_args` NUL-terminated strings; outputs must be writable.
 */
enum OlStatus ol_run(const char *const *args, size_t n_args, char **out_json, int32_t *exit_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ORTHO_LVALUES_H */
