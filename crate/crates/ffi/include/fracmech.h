/*
 * fracmech C interface.
 *
 * Fallible calls return an FmStatus; on failure fm_last_error_message()
 * describes the error. Matrices are double[9] in row-major order.
 * Enum-typed arguments are passed as int32_t and validated.
 */

#ifndef FRACMECH_H
#define FRACMECH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum FmStatus {
  FM_STATUS_OK = 0,
  FM_STATUS_NULL_POINTER = 1,
  // Order outside (0, 1], bad interval or subdivision count, bad enum value.
  FM_STATUS_INVALID_ARGUMENT = 2,
  // Domain violation such as a non-positive horizon or Gamma pole.
  FM_STATUS_DOMAIN = 3,
  // A horizon interval leaves the body box.
  FM_STATUS_OUTSIDE_BODY = 4,
  FM_STATUS_SINGULAR_MATRIX = 5,
  FM_STATUS_NON_POSITIVE_JACOBIAN = 6,
  FM_STATUS_NON_FINITE = 7,
  FM_STATUS_PANIC = 8,
} FmStatus;

// Which gradient of the line-element diagram to evaluate.
typedef enum FmGradientKind {
  FM_GRADIENT_KIND_CLASSICAL = 0,
  FM_GRADIENT_KIND_FRAC_MATERIAL = 1,
  FM_GRADIENT_KIND_FRAC_SPATIAL = 2,
  FM_GRADIENT_KIND_ALPHA_COMPOSITE = 3,
  FM_GRADIENT_KIND_ALPHA_MATERIAL_SIDE = 4,
  FM_GRADIENT_KIND_ALPHA_SPATIAL_SIDE = 5,
} FmGradientKind;

typedef enum FmStrainFamily {
  FM_STRAIN_FAMILY_CLASSICAL = 0,
  FM_STRAIN_FAMILY_FRAC_MATERIAL = 1,
  FM_STRAIN_FAMILY_FRAC_SPATIAL = 2,
  FM_STRAIN_FAMILY_ALPHA = 3,
} FmStrainFamily;

typedef enum FmPkFamily {
  FM_PK_FAMILY_CLASSICAL = 0,
  FM_PK_FAMILY_FRAC_MATERIAL = 1,
  FM_PK_FAMILY_FRAC_SPATIAL = 2,
  FM_PK_FAMILY_ALPHA = 3,
} FmPkFamily;

// Whether a point is given in the reference or the current configuration,
// and which side of a model a setting applies to.
typedef enum FmSide {
  FM_SIDE_MATERIAL = 0,
  FM_SIDE_SPATIAL = 1,
} FmSide;

// Opaque handle holding orders, horizons and quadrature settings for both
// sides.
typedef struct FmModel FmModel;

// Opaque motion handle.
typedef struct FmMotion FmMotion;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message of this thread into `buf` (NUL-terminated,
// truncated to `len`). Returns the full message length including the NUL,
// or 0 when there is no message.
//
// # Safety
// `buf` must be NULL or point to `len` writable bytes.
size_t fm_last_error_message(char *buf, size_t len);

void fm_clear_error(void);

// Library version as a static NUL-terminated string.
const char *fm_version(void);

// Γ(x) for x > 0.
//
// # Safety
// `out` must be NULL or valid for one write.
enum FmStatus fm_gamma(double x, double *out);

// Riesz-Caputo derivative of `f` at `t` over `(a, b)`.
//
// `df` is the first derivative; pass NULL to fall back on central
// differences of `f`. `user_data` is handed to both callbacks.
//
// # Safety
// The callbacks must be safe to call with `user_data`; `out` must be valid
// for one write.
enum FmStatus fm_riesz_caputo(double (*f)(double, void*),
                              double (*df)(double, void*),
                              void *user_data,
                              double a,
                              double t,
                              double b,
                              double alpha,
                              size_t m,
                              double *out);

// `x = X`.
//
// # Safety
// `out` must be valid for one write.
enum FmStatus fm_motion_identity(struct FmMotion **out);

// `x = X + offset`.
//
// # Safety
// `offset` must point to 3 doubles, `out` be valid for one write.
enum FmStatus fm_motion_translation(const double *offset, struct FmMotion **out);

// `x₁ = (1 + β) X₁`, other coordinates fixed. Requires β > −1.
//
// # Safety
// `out` must be valid for one write.
enum FmStatus fm_motion_linear(double beta, struct FmMotion **out);

// `x₁ = exp(X₁)`, other coordinates fixed.
//
// # Safety
// `out` must be valid for one write.
enum FmStatus fm_motion_exponential(struct FmMotion **out);

// `x = A X + c` with `A` row-major and `det A > 0`.
//
// # Safety
// `matrix` must point to 9 doubles, `offset` to 3, `out` be valid for one
// write.
enum FmStatus fm_motion_affine(const double *matrix, const double *offset, struct FmMotion **out);

// Maps `X` to `x` at time `t`.
//
// # Safety
// `motion` must be a live handle, `reference` and `out` 3 doubles each.
enum FmStatus fm_motion_forward(const struct FmMotion *motion,
                                const double *reference,
                                double t,
                                double *out);

// # Safety
// `motion` must be NULL or a handle not yet freed.
void fm_motion_free(struct FmMotion *motion);

// Uniform order and horizon on every entry and on both sides, unbounded
// body, `m` subintervals per side.
//
// # Safety
// `out` must be valid for one write.
enum FmStatus fm_model_new(double alpha,
                           double ell_left,
                           double ell_right,
                           size_t m,
                           struct FmModel **out);

// Per-entry orders and horizons for one side. `ell` may be NULL, which
// uses the mean `(ℓ_L + ℓ_R)/2` of each entry as scaling length.
//
// # Safety
// `model` must be a live handle; the arrays must hold 9 doubles each.
enum FmStatus fm_model_set_side(struct FmModel *model,
                                int32_t side,
                                const double *alpha,
                                const double *ell_left,
                                const double *ell_right,
                                const double *ell);

// Body box of one side, and whether horizons leaving it are clamped
// (non-zero) or rejected with `FM_STATUS_OUTSIDE_BODY` (zero).
//
// # Safety
// `model` must be a live handle, `min` and `max` 3 doubles each.
enum FmStatus fm_model_set_domain(struct FmModel *model,
                                  int32_t side,
                                  const double *min,
                                  const double *max,
                                  int32_t clamp);

// # Safety
// `model` must be NULL or a handle not yet freed.
void fm_model_free(struct FmModel *model);

// Gradient `kind` at a point given on side `location`, written row-major to
// `out`.
//
// # Safety
// Handles must be live; `coords` holds 3 doubles, `out` 9.
enum FmStatus fm_gradient(const struct FmModel *model,
                          const struct FmMotion *motion,
                          int32_t kind,
                          int32_t location,
                          const double *coords,
                          double t,
                          double *out);

// Material and spatial strains of `family`, each written row-major.
//
// # Safety
// Handles must be live; `coords` holds 3 doubles, each output 9.
enum FmStatus fm_strain_pair(const struct FmModel *model,
                             const struct FmMotion *motion,
                             int32_t family,
                             int32_t location,
                             const double *coords,
                             double t,
                             double *out_material,
                             double *out_spatial);

// First and second Piola-Kirchhoff stresses from a symmetric Cauchy stress
// and the family's gradient (`F̃_x` for `FM_PK_FAMILY_FRAC_SPATIAL`, a
// material-to-spatial gradient otherwise).
//
// # Safety
// `sigma` and `gradient` hold 9 doubles, each output 9.
enum FmStatus fm_piola_kirchhoff(int32_t family,
                                 const double *sigma,
                                 const double *gradient,
                                 double *out_p,
                                 double *out_s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FRACMECH_H */
