#ifndef MOCKHECKE_H
#define MOCKHECKE_H

/* Generated by cbindgen; edit src/lib.rs instead. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Call status. Zero is success; everything else leaves a message in the
 * context retrievable with `mh_last_error`.
 */
typedef enum {
  MH_STATUS_OK = 0,
  MH_STATUS_NULL_POINTER = 1,
  MH_STATUS_INVALID_ARGUMENT = 2,
  MH_STATUS_COMPUTATION_FAILED = 3,
  MH_STATUS_PANIC = 4,
} MhStatus;

/**
 * Opaque computation context: precision settings plus the last error
 * message. Not thread-safe; use one per thread.
 */
typedef struct MhContext MhContext;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Create a context. `series_order` is the q-truncation (>= 2), `c_max` the
 * Kloosterman cutoff (>= 1), `precision_digits` the working precision
 * (>= 30), `root_tol_decimal` a tolerance like "1e-30" (NULL for the
 * default). Returns NULL when the parameters are rejected.
 */
MhContext *mh_context_new(int64_t series_order,
                          uint32_t c_max,
                          uint32_t precision_digits,
                          const char *root_tol_decimal);

/**
 * Context with the library defaults (N = 64, c_max = 10^4, 60 digits).
 */
MhContext *mh_context_default(void);

/**
 * Destroy a context created by `mh_context_new`/`mh_context_default`.
 *
 * # Safety
 * `ctx` must be a pointer returned by a context constructor, not yet freed.
 */
void mh_context_free(MhContext *ctx);

/**
 * The last error message recorded on this context, or NULL. The pointer is
 * owned by the context and valid until the next failing call on it.
 */
const char *mh_last_error(const MhContext *ctx);

/**
 * Free a string returned by this library.
 *
 * # Safety
 * `s` must be a pointer previously returned by a `mockhecke` call that
 * documents `mh_string_free` ownership, and not freed before.
 */
void mh_string_free(char *s);

/**
 * Coefficients of the Faber polynomial ψ_m as a JSON array of decimal
 * strings, ascending degree. Free with `mh_string_free`.
 */
MhStatus mh_psi_json(MhContext *ctx, uint32_t m, char **out);

/**
 * Coefficients of the Hecke polynomial F_m as a JSON array of decimal
 * strings, ascending degree. Free with `mh_string_free`.
 */
MhStatus mh_hecke_poly_json(MhContext *ctx, int64_t m, char **out);

/**
 * Root table of F_m as CSV with header `m,ell,x,theta,u` (40-digit
 * decimals). Free with `mh_string_free`.
 */
MhStatus mh_roots_csv(MhContext *ctx, int64_t m, char **out);

/**
 * Mock coefficient a(n) for n >= 1 as JSON
 * {"value": "...", "digits": d, "tail_estimate": "...", "c_max": c}.
 * For n = 0 the exact rational is returned as {"exact": "p/q"}.
 * Free with `mh_string_free`.
 */
MhStatus mh_mock_coefficient_json(MhContext *ctx, int64_t n, char **out);

/**
 * β as JSON {"value": ..., "digits": ..., "tail_estimate": ..., "c_max": ...}.
 * Free with `mh_string_free`.
 */
MhStatus mh_beta_json(MhContext *ctx, char **out);

/**
 * Run the arc budget check for index m on a θ-grid; writes 1 to
 * `all_pass` when every grid point passes.
 */
MhStatus mh_bound_check(MhContext *ctx, int64_t m, uintptr_t grid, bool *all_pass);

/**
 * Run the certification suite: level 0 is quick, anything else full.
 * Returns the number of failing criteria, or -1 on invalid input.
 */
int32_t mh_verify(uint32_t level);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MOCKHECKE_H */
