#ifndef HKG_CANON_H
#define HKG_CANON_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes; 1 to 3 match the exit codes of the command-line tool.
typedef enum HkgStatus {
  HKG_STATUS_OK = 0,
  HKG_STATUS_INVALID = 1,
  HKG_STATUS_VERIFICATION_FAILED = 2,
  HKG_STATUS_PARSE = 3,
  HKG_STATUS_NULL_ARGUMENT = 4,
  HKG_STATUS_INTERNAL = 5,
} HkgStatus;

// Quadratic generators of the canonical ideal of a tower.
typedef struct HkgIdeal HkgIdeal;

// A validated tower with its differential basis.
typedef struct HkgTower HkgTower;

typedef struct HkgVerifyResult {
  uintptr_t dim_j;
  uintptr_t dim_kernel;
  bool span_equal;
  uintptr_t survivors;
  uintptr_t classes;
  bool quotient_pass;
  // Only meaningful when degree 3 was requested.
  bool deg3_checked;
  bool deg3_pass;
} HkgVerifyResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL. The pointer is
// valid until the next call into this library on the same thread.
const char *hkg_last_error_message(void);

// Parses a curve document and builds its tower.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum HkgStatus hkg_tower_from_json(const char *json, struct HkgTower **out);

// # Safety
// `tower` must come from [`hkg_tower_from_json`] and not be freed twice.
void hkg_tower_free(struct HkgTower *tower);

// Genus of the top curve; 0 for a NULL handle.
//
// # Safety
// `tower` must be NULL or a live handle.
uint64_t hkg_tower_genus(const struct HkgTower *tower);

// Whether every Petri gate passes.
//
// # Safety
// `tower` must be NULL or a live handle.
bool hkg_tower_petri_ok(const struct HkgTower *tower);

// Builds the generating set.
//
// # Safety
// `tower` must be a live handle and `out` a valid pointer.
enum HkgStatus hkg_ideal_build(const struct HkgTower *tower, struct HkgIdeal **out);

// # Safety
// `ideal` must come from [`hkg_ideal_build`] and not be freed twice.
void hkg_ideal_free(struct HkgIdeal *ideal);

// Number of generators; 0 for a NULL handle.
//
// # Safety
// `ideal` must be NULL or a live handle.
uintptr_t hkg_ideal_len(const struct HkgIdeal *ideal);

// Number of candidate relations skipped during construction.
//
// # Safety
// `ideal` must be NULL or a live handle.
uintptr_t hkg_ideal_skipped(const struct HkgIdeal *ideal);

// Serializes the generators in `format` ("plain", "json", "singular",
// "macaulay2"). The string in `out` is released with [`hkg_string_free`].
//
// # Safety
// `ideal` must be a live handle, `format` NUL-terminated, `out` valid.
enum HkgStatus hkg_ideal_export(const struct HkgIdeal *ideal,
                                const char *format,
                                bool canonical_coeffs,
                                char **out);

// Runs the oracle checks. Returns `HKG_STATUS_VERIFICATION_FAILED` with
// `out` filled in when a check fails.
//
// # Safety
// `ideal` must be a live handle and `out` a valid pointer.
enum HkgStatus hkg_ideal_verify(const struct HkgIdeal *ideal,
                                bool deg3,
                                uintptr_t deg3_ceiling,
                                struct HkgVerifyResult *out);

// # Safety
// `s` must be NULL or a string returned by this library.
void hkg_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HKG_CANON_H */
