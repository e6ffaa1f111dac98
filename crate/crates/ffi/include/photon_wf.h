#ifndef PHOTON_WF_H
#define PHOTON_WF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PwfStatus {
  PWF_STATUS_OK = 0,
  PWF_STATUS_NULL_POINTER = 1,
  PWF_STATUS_INVALID_ARGUMENT = 2,
  PWF_STATUS_INVALID_ORDER = 3,
  /**
   * Ei at the origin.
   */
  PWF_STATUS_DOMAIN = 4,
  PWF_STATUS_OVERFLOW = 5,
  PWF_STATUS_LIGHTCONE_SINGULAR = 6,
  PWF_STATUS_NOT_APPLICABLE = 7,
  PWF_STATUS_TOLERANCE_NOT_MET = 8,
  PWF_STATUS_NUMERIC_FAILURE = 9,
  PWF_STATUS_PANIC = 10,
} PwfStatus;

typedef enum PwfCombination {
  PWF_COMBINATION_DIFFERENCE = 0,
  PWF_COMBINATION_SUM = 1,
} PwfCombination;

typedef enum PwfTreatment {
  PWF_TREATMENT_STANDARD = 0,
  PWF_TREATMENT_DIPOLE = 1,
  PWF_TREATMENT_EXACT = 2,
} PwfTreatment;

typedef enum PwfZone {
  PWF_ZONE_FAR = 0,
  PWF_ZONE_MID = 1,
  PWF_ZONE_NEAR = 2,
} PwfZone;

typedef enum PwfPart {
  PWF_PART_POLE = 0,
  PWF_PART_PV = 1,
  PWF_PART_TOTAL = 2,
} PwfPart;

typedef enum PwfComponent {
  PWF_COMPONENT_TRANSVERSE = 0,
  PWF_COMPONENT_RADIAL = 1,
} PwfComponent;

/**
 * Opaque assembled field at one spacetime point.
 */
typedef struct PwfField PwfField;

/**
 * Opaque model parameters.
 */
typedef struct PwfParams PwfParams;

typedef struct PwfComplex {
  double re;
  double im;
} PwfComplex;

/**
 * Residue coefficients; `gamma0`/`gamma1` belong to `+iκ`, the `_lower`
 * fields to `-iκ`.
 */
typedef struct PwfResidues {
  struct PwfComplex g0;
  struct PwfComplex gamma0;
  struct PwfComplex gamma1;
  struct PwfComplex gamma0_lower;
  struct PwfComplex gamma1_lower;
  struct PwfComplex origin;
} PwfResidues;

typedef struct PwfPoleAndPv {
  struct PwfComplex pole;
  struct PwfComplex pv;
  struct PwfComplex total;
} PwfPoleAndPv;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *pwf_status_message(enum PwfStatus status);

/**
 * Hydrogen parameters with `Γ = ω_LS = 0`. Release with [`pwf_params_free`].
 */
struct PwfParams *pwf_params_hydrogen(void);

/**
 * Hydrogen parameters with `κ`, `Γ/ω0` and `ω_LS/ω0` replaced.
 *
 * # Safety
 * `out` must be null or valid for writing one pointer.
 */
enum PwfStatus pwf_params_new(double kappa, double gamma, double lamb, struct PwfParams **out);

/**
 * # Safety
 * `params` must be null or a handle from this library not yet freed.
 */
void pwf_params_free(struct PwfParams *params);

/**
 * # Safety
 * `params` must be a live handle; `out` must be valid for writing.
 */
enum PwfStatus pwf_params_kappa(const struct PwfParams *params, double *out);

/**
 * Principal-branch `Ei(z)`.
 *
 * # Safety
 * `out` must be valid for writing.
 */
enum PwfStatus pwf_expint_ei(struct PwfComplex z, struct PwfComplex *out);

/**
 * # Safety
 * `params` must be a live handle; `out` must be valid for writing.
 */
enum PwfStatus pwf_residue_coeffs(const struct PwfParams *params,
                                  int32_t n,
                                  struct PwfResidues *out);

/**
 * Exact-coupling `H_n^+ ∓ H_n^-` split into pole and principal-value parts.
 * `n = 3` accepts only the difference.
 *
 * # Safety
 * `params` must be a live handle; `out` must be valid for writing.
 */
enum PwfStatus pwf_h_exact_combination(const struct PwfParams *params,
                                       int32_t n,
                                       double x,
                                       double t,
                                       enum PwfCombination combination,
                                       struct PwfPoleAndPv *out);

/**
 * Assembles the field at `(x, t)` for polarization `m2` seen along
 * `direction` (three doubles, normalized here). Release with
 * [`pwf_field_free`].
 *
 * # Safety
 * `params` must be a live handle, `direction` must point to three readable
 * doubles and `out` must be valid for writing one pointer.
 */
enum PwfStatus pwf_field_assemble(const struct PwfParams *params,
                                  enum PwfTreatment treatment,
                                  double x,
                                  double t,
                                  int32_t m2,
                                  const double *direction,
                                  bool g0_suppressed,
                                  struct PwfField **out);

/**
 * One cell of an assembled field. Cells singular on the lightcone hold NaN.
 *
 * # Safety
 * `field` must be a live handle; `out` must be valid for writing.
 */
enum PwfStatus pwf_field_cell(const struct PwfField *field,
                              enum PwfZone zone,
                              enum PwfPart part,
                              enum PwfComponent component,
                              struct PwfComplex *out);

/**
 * # Safety
 * `field` must be null or a handle from this library not yet freed.
 */
void pwf_field_free(struct PwfField *field);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PHOTON_WF_H */
