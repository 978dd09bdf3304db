/* Generated by cbindgen from crates/ffi/src/lib.rs. */

#ifndef INTSIM_H
#define INTSIM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes; 0 through 4 are the command-line exit codes.
 */
typedef enum IntsimStatus {
  INTSIM_STATUS_OK = 0,
  INTSIM_STATUS_USAGE = 1,
  INTSIM_STATUS_UNSUPPORTED = 2,
  INTSIM_STATUS_CAPACITY = 3,
  INTSIM_STATUS_CONSISTENCY = 4,
  INTSIM_STATUS_NULL_POINTER = 5,
  INTSIM_STATUS_INVALID_UTF8 = 6,
  INTSIM_STATUS_INVALID_ARGUMENT = 7,
  INTSIM_STATUS_PANIC = 8,
} IntsimStatus;

/*
 Values for the `kind` arguments.
 */
typedef enum IntsimKind {
  INTSIM_KIND_TRI = 0,
  INTSIM_KIND_DIAG = 1,
} IntsimKind;

/*
 Values for the `level` argument of `intsim_decide`.
 */
typedef enum IntsimLevel {
  INTSIM_LEVEL_RING = 0,
  INTSIM_LEVEL_FIELD = 1,
  INTSIM_LEVEL_LOCAL = 2,
  INTSIM_LEVEL_RESIDUE_FIELD = 3,
  INTSIM_LEVEL_COMPLETED_FIELD = 4,
  INTSIM_LEVEL_RESIDUE = 5,
} IntsimLevel;

/*
 A parsed input matrix.
 */
typedef struct IntsimMatrix IntsimMatrix;

/*
 A JSON report document and its exit code.
 */
typedef struct IntsimReport IntsimReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Library version as a static NUL-terminated string.
 */
const char *intsim_version(void);

/*
 Message of the last failed call on this thread, or NULL. Valid until the
 next library call on the same thread.
 */
const char *intsim_last_error(void);

/*
 Parse a matrix from the JSON input format into `*out`.

 # Safety
 `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum IntsimStatus intsim_matrix_parse(const char *json, struct IntsimMatrix **out);

/*
 Number of rows, or 0 for NULL.

 # Safety
 `m` must be NULL or a live matrix handle.
 */
size_t intsim_matrix_rows(const struct IntsimMatrix *m);

/*
 Number of columns, or 0 for NULL.

 # Safety
 `m` must be NULL or a live matrix handle.
 */
size_t intsim_matrix_cols(const struct IntsimMatrix *m);

/*
 # Safety
 `m` must be NULL or a handle from `intsim_matrix_parse`, freed once.
 */
void intsim_matrix_free(struct IntsimMatrix *m);

/*
 Decide one condition. `prime` 0 means none; it is required for the
 local levels. `k` is the exponent for the residue level. A `budget` of 0
 selects the default.

 # Safety
 `m` must be a live matrix handle and `out` a valid pointer.
 */
enum IntsimStatus intsim_decide(const struct IntsimMatrix *m,
                                uint32_t kind,
                                uint32_t level,
                                uint64_t prime,
                                uint32_t k,
                                uint64_t budget,
                                struct IntsimReport **out);

/*
 All six conditions at primes of norm up to `prime_bound`. A `budget` of 0
 selects the default.

 # Safety
 `m` must be a live matrix handle and `out` a valid pointer.
 */
enum IntsimStatus intsim_report(const struct IntsimMatrix *m,
                                uint32_t kind,
                                uint64_t prime_bound,
                                uint64_t budget,
                                struct IntsimReport **out);

/*
 Three-leg certification of a matrix over an imaginary quadratic order.

 # Safety
 `m` must be a live matrix handle and `out` a valid pointer.
 */
enum IntsimStatus intsim_certify(const struct IntsimMatrix *m,
                                 uint32_t kind,
                                 uint64_t prime_bound,
                                 struct IntsimReport **out);

/*
 Counterexample recipe over the ring of integers of Q(sqrt(d)).

 # Safety
 `out` must be a valid pointer.
 */
enum IntsimStatus intsim_counterexample(uint32_t kind,
                                        int64_t d,
                                        size_t n,
                                        bool certify,
                                        uint64_t prime_bound,
                                        struct IntsimReport **out);

/*
 Stratification audit of diag(lambda I_m, J_n(lambda)) over F_q. A
 `budget` of 0 selects the default.

 # Safety
 `out` must be a valid pointer.
 */
enum IntsimStatus intsim_strata_audit(size_t m,
                                      size_t n,
                                      int64_t lambda,
                                      uint8_t q,
                                      uint64_t budget,
                                      struct IntsimReport **out);

/*
 Re-verify every witness embedded in a report document.

 # Safety
 `report_json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum IntsimStatus intsim_verify(const char *report_json, struct IntsimReport **out);

/*
 The JSON document, or NULL for a NULL handle.

 # Safety
 `r` must be NULL or a live report handle.
 */
const char *intsim_report_json(const struct IntsimReport *r);

/*
 The exit code, or -1 for a NULL handle.

 # Safety
 `r` must be NULL or a live report handle.
 */
int32_t intsim_report_exit_code(const struct IntsimReport *r);

/*
 # Safety
 `r` must be NULL or a handle returned by this library, freed once.
 */
void intsim_report_free(struct IntsimReport *r);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INTSIM_H */
