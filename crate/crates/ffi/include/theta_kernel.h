#ifndef THETA_KERNEL_H
#define THETA_KERNEL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

// Result codes. `TK_STATUS_OK` is zero; every other value names the failure.
typedef enum TkStatus {
  TK_STATUS_OK = 0,
  TK_STATUS_NULL_POINTER = 1,
  TK_STATUS_INVALID_INPUT = 2,
  TK_STATUS_DEGENERATE_LATTICE = 3,
  TK_STATUS_NON_INTEGRAL_DIMENSION = 4,
  TK_STATUS_NOT_UNIT_MODULUS = 5,
  TK_STATUS_OVERFLOW = 6,
  TK_STATUS_NOME_OUT_OF_RANGE = 7,
  TK_STATUS_POLE_AT_LATTICE_POINT = 8,
  TK_STATUS_ZERO_GAMMA = 9,
  TK_STATUS_INCONSISTENT_MU = 10,
  TK_STATUS_NO_CONVERGENCE = 11,
  TK_STATUS_NOT_REAL_CHARACTER = 12,
  TK_STATUS_NOT_ONE_DIMENSIONAL = 13,
  TK_STATUS_IDENTICALLY_ZERO = 14,
  TK_STATUS_PATH_UNSTABLE = 15,
  TK_STATUS_REFINEMENT_FAILED = 16,
  TK_STATUS_PANIC = 17,
} TkStatus;

// Opaque handle to a theta Fock space.
typedef struct TkSpace TkSpace;

typedef struct TkComplex {
  double re;
  double im;
} TkComplex;

typedef struct TkSumResult {
  struct TkComplex value;
  // Bound on the omitted tail.
  double tail_bound;
  size_t shells_used;
  // Sum of the moduli of the included terms.
  double mass;
} TkSumResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Creates the space for lattice `(omega1, omega2)`, magnitude `nu` and the
// character with generator values `u1 = χ(ω₁)`, `u2 = χ(ω₂)`.
//
// # Safety
// `out` must be valid for writes. On success it receives a handle that must
// be released with `tk_space_free`.
enum TkStatus tk_space_new(struct TkComplex omega1,
                           struct TkComplex omega2,
                           double nu,
                           struct TkComplex u1,
                           struct TkComplex u2,
                           struct TkSpace **out);

// As `tk_space_new` with the Weierstrass character `u1 = u2 = −1`.
//
// # Safety
// See `tk_space_new`.
enum TkStatus tk_space_new_weierstrass(struct TkComplex omega1,
                                       struct TkComplex omega2,
                                       double nu,
                                       struct TkSpace **out);

// Releases a handle. Null is ignored.
//
// # Safety
// `sp` must be null or a handle from `tk_space_new*` not yet freed.
void tk_space_free(struct TkSpace *sp);

// # Safety
// `sp` must be a live handle and `out` valid for writes.
enum TkStatus tk_space_dimension(const struct TkSpace *sp, uint32_t *out);

// `K(z, w)` by lattice summation to tolerance `eps`.
//
// # Safety
// `sp` must be a live handle and `out` valid for writes.
enum TkStatus tk_kernel_eval(const struct TkSpace *sp,
                             struct TkComplex z,
                             struct TkComplex w,
                             double eps,
                             struct TkSumResult *out);

// The coefficient `a^{p,q}_{m,n}`.
//
// # Safety
// `sp` must be a live handle and `out` valid for writes.
enum TkStatus tk_coeff(const struct TkSpace *sp,
                       size_t m,
                       size_t n,
                       size_t p,
                       size_t q,
                       double eps,
                       struct TkSumResult *out);

// Poincaré series of `z^m` evaluated at `z`.
//
// # Safety
// `sp` must be a live handle and `out` valid for writes.
enum TkStatus tk_poincare_monomial(const struct TkSpace *sp,
                                   size_t m,
                                   struct TkComplex z,
                                   double eps,
                                   struct TkSumResult *out);

// Zeros of `K(·, w)` in one cell, by the argument principle with `nodes`
// Gauss nodes per edge.
//
// # Safety
// `sp` must be a live handle and `out` valid for writes.
enum TkStatus tk_zero_count(const struct TkSpace *sp,
                            struct TkComplex w,
                            size_t nodes,
                            uint32_t *out);

// `Σ (−1)^{m+n+mn} e^{−(tπ/2)(m²+n²)}` over all integer pairs.
//
// # Safety
// `out` must be valid for writes.
enum TkStatus tk_gaussian_char_sum(double t, double *out);

// Weighted complex Hermite polynomial `H^ν_{m,n}(ξ, ξ̄)`.
//
// # Safety
// `out` must be valid for writes.
enum TkStatus tk_hermite(double nu, size_t m, size_t n, struct TkComplex xi, struct TkComplex *out);

// Residual of the printed theta-constant identity at `nu`.
//
// # Safety
// `out` must be valid for writes.
enum TkStatus tk_theta_identity_residual(double nu, double *out);

// Message of the last failed call on this thread, empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *tk_last_error_message(void);

// Name of a status code, e.g. `"IdenticallyZero"`. Static storage.
const char *tk_status_name(enum TkStatus status);

// Library version string. Static storage.
const char *tk_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* THETA_KERNEL_H */
