#ifndef EXOTIC_H
#define EXOTIC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum ExoStatus {
  EXO_STATUS_OK = 0,
  EXO_STATUS_NULL_POINTER = 1,
  EXO_STATUS_INVALID_ARGUMENT = 2,
  EXO_STATUS_INVALID_UTF8 = 3,
  EXO_STATUS_GUARD_EXCEEDED = 4,
  EXO_STATUS_VERIFICATION_FAILED = 5,
  EXO_STATUS_INTERNAL = 6,
} ExoStatus;

// An exotic nilpotent pair `(v, x)` over a prime field.
typedef struct ExoPoint ExoPoint;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Builds the normal-basis point of the orbit `(mu, nu)` over 𝔽_p.
//
// # Safety
// `mu` and `nu` must be valid C strings; `out` must be writable.
enum ExoStatus exo_point_normal_basis(const char *mu,
                                      const char *nu,
                                      uint32_t p,
                                      struct ExoPoint **out);

// Releases a point; null is ignored.
//
// # Safety
// `pt` must come from [`exo_point_normal_basis`] and not be used afterwards.
void exo_point_free(struct ExoPoint *pt);

// Dimension `2n` of the ambient symplectic space.
//
// # Safety
// `pt` must be a live handle; `out` must be writable.
enum ExoStatus exo_point_dim(const struct ExoPoint *pt, size_t *out);

// `{"p": .., "x": [[..]], "form": [[..]], "v": [..]}` for the point.
//
// # Safety
// `pt` must be a live handle; `out` must be writable.
enum ExoStatus exo_point_json(const struct ExoPoint *pt, char **out);

// The exotic Jordan type of the point as `{"mu": [..], "nu": [..]}`.
//
// # Safety
// `pt` must be a live handle; `out` must be writable.
enum ExoStatus exo_point_exotic_type_json(const struct ExoPoint *pt, char **out);

// `d^α` of the orbit `(mu, nu)` for the composition `alpha`.
//
// # Safety
// String arguments must be valid C strings; `out` must be writable.
enum ExoStatus exo_d_alpha(const char *mu, const char *nu, const char *alpha, int64_t *out);

// Census of the fibre of type `alpha` over the point, as a JSON list of
// `{"key": [{"mu":..,"nu":..}, ..], "count": ..}` sorted by key.
// `guard` bounds the estimated number of flags; `EXOTIC_GUARD` overrides it.
//
// # Safety
// `pt` must be a live handle, `alpha` a valid C string, `out` writable.
enum ExoStatus exo_fiber_census_json(const struct ExoPoint *pt,
                                     const char *alpha,
                                     uint64_t guard,
                                     char **out);

// Checks the dimension-difference identity catalog. Writes the number
// passed and the total; returns `VerificationFailed` unless all pass.
//
// # Safety
// `passed` and `total` must be writable.
enum ExoStatus exo_verify_identities(uint32_t *passed, uint32_t *total);

// Releases a string returned by this library; null is ignored.
//
// # Safety
// `s` must come from this library and not be used afterwards.
void exo_string_free(char *s);

// Message for the last failed call on this thread (empty after success).
// The pointer stays valid until the next call into the library on this thread.
const char *exo_last_error(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* EXOTIC_H */
