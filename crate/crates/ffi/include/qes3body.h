#ifndef QES3BODY_H
#define QES3BODY_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum {
  QES3_STATUS_OK = 0,
  QES3_STATUS_NULL_POINTER = 1,
  QES3_STATUS_INVALID_INPUT = 2,
  QES3_STATUS_CHART_MISMATCH = 3,
  QES3_STATUS_INVARIANCE_VIOLATION = 4,
  QES3_STATUS_ASSEMBLY_VIOLATION = 5,
  QES3_STATUS_NUMERICAL_FAILURE = 6,
  QES3_STATUS_SINGULAR_CONFIGURATION = 7,
  QES3_STATUS_DIVERGENT_POTENTIAL = 8,
  QES3_STATUS_UNDEFINED_W3 = 9,
  QES3_STATUS_CONDITIONING = 10,
  QES3_STATUS_NOT_FOUND = 11,
  QES3_STATUS_BUFFER_TOO_SMALL = 12,
  QES3_STATUS_PANIC = 13,
  QES3_STATUS_OTHER = 14,
} Qes3Status;

/**
 * A differential operator with exact rational coefficients.
 */
typedef struct Qes3Operator Qes3Operator;

/**
 * Parameters `N, ω, γ, A` of the Hamiltonian.
 */
typedef struct Qes3Params Qes3Params;

/**
 * Eigenvalues and physical energies of one matrix problem.
 */
typedef struct Qes3Spectrum Qes3Spectrum;

/**
 * Library version, a static NUL-terminated string.
 */
const char *qes3_version(void);

/**
 * Message of the last failed call on this thread (empty after success).
 *
 * # Safety
 * `buf` must point to `len` writable bytes when `len > 0`; `needed` may be
 * null.
 */
Qes3Status qes3_last_error_message(char *buf, size_t len, size_t *needed);

/**
 * # Safety
 * The four strings must be NUL-terminated; `out` must be writable.
 */
Qes3Status qes3_params_new(const char *n_level,
                           const char *omega,
                           const char *gamma,
                           const char *a_coupling,
                           Qes3Params **out);

/**
 * # Safety
 * `p` must come from [`qes3_params_new`] and not be used afterwards.
 */
void qes3_params_free(Qes3Params *p);

/**
 * Look up a named operator of the catalog (equal masses), e.g.
 * `"L1(rho)"` or `"h_qes(tau)"`.
 *
 * # Safety
 * `params` must be a live handle, `name` NUL-terminated, `out` writable.
 */
Qes3Status qes3_operator_from_catalog(const Qes3Params *params,
                                      const char *name,
                                      Qes3Operator **out);

/**
 * # Safety
 * `json` must be NUL-terminated, `out` writable.
 */
Qes3Status qes3_operator_from_json(const char *json, Qes3Operator **out);

/**
 * Canonical JSON of an operator; see [`qes3_last_error_message`] for the
 * buffer convention.
 *
 * # Safety
 * `op` must be a live handle; `buf` must hold `len` bytes when `len > 0`.
 */
Qes3Status qes3_operator_to_json(const Qes3Operator *op, char *buf, size_t len, size_t *needed);

/**
 * `[a, b] = ab − ba`.
 *
 * # Safety
 * `a`, `b` must be live handles; `out` writable.
 */
Qes3Status qes3_operator_commutator(const Qes3Operator *a,
                                    const Qes3Operator *b,
                                    Qes3Operator **out);

/**
 * # Safety
 * `op` must be a live handle; `out` writable.
 */
Qes3Status qes3_operator_is_zero(const Qes3Operator *op, bool *out);

/**
 * # Safety
 * `op` must come from this library and not be used afterwards.
 */
void qes3_operator_free(Qes3Operator *op);

/**
 * Solve the matrix problem on `space` (`"p3"`, `"p123"`, `"p12"`, `"p1"`)
 * for `variant` (`"qes"` or `"es"`).
 *
 * # Safety
 * `params` must be a live handle, the strings NUL-terminated, `out`
 * writable.
 */
Qes3Status qes3_spectrum_solve(const Qes3Params *params,
                               const char *space,
                               const char *variant,
                               Qes3Spectrum **out);

/**
 * # Safety
 * `s` must be a live handle; `out` writable.
 */
Qes3Status qes3_spectrum_len(const Qes3Spectrum *s, size_t *out);

/**
 * Eigenvalue `i` in ascending order, its certified residual and the
 * physical energy `Re λ + E0`. Any output pointer may be null.
 *
 * # Safety
 * `s` must be a live handle; non-null outputs must be writable.
 */
Qes3Status qes3_spectrum_get(const Qes3Spectrum *s,
                             size_t i,
                             double *re,
                             double *im,
                             double *residual,
                             double *energy);

/**
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void qes3_spectrum_free(Qes3Spectrum *s);

/**
 * Effective potential of the gauge rotation at squared distances `rho[3]`.
 *
 * # Safety
 * `rho` must point to three doubles; `out` writable.
 */
Qes3Status qes3_effective_potential(const double *rho, double *out);

/**
 * Closed-form Ricci scalar at `rho[3]`.
 *
 * # Safety
 * `rho` must point to three doubles; `out` writable.
 */
Qes3Status qes3_ricci_scalar(const double *rho, double *out);

/**
 * `(w1, w2, w3)` at `rho[3]` into `out[3]`.
 *
 * # Safety
 * `rho` must point to three doubles, `out` to three writable doubles.
 */
Qes3Status qes3_w_coords(const double *rho, double *out);

/**
 * Run one finite-difference check (`"reduction"`, `"gauge"`,
 * `"separation"` or `"curvature"`) with default tolerances.
 *
 * # Safety
 * `check` must be NUL-terminated; non-null outputs must be writable.
 */
Qes3Status qes3_oracle_run(const char *check,
                           size_t samples,
                           double fd_step,
                           uint64_t seed,
                           double *max_rel_err,
                           bool *pass);

#endif  /* QES3BODY_H */
