#ifndef KULS_H
#define KULS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. Zero is success.
 */
typedef enum KulsStatus {
  KULS_STATUS_OK = 0,
  KULS_STATUS_NULL_POINTER = 1,
  KULS_STATUS_INVALID_UTF8 = 2,
  KULS_STATUS_SYNTAX = 3,
  KULS_STATUS_INVALID_PRESENTATION = 4,
  KULS_STATUS_BAD_FIELD = 5,
  KULS_STATUS_BAD_PARAMETERS = 6,
  KULS_STATUS_INFINITE_DIMENSIONAL = 7,
  KULS_STATUS_DEGREE_BOUND_EXCEEDED = 8,
  KULS_STATUS_NOT_SELFINJECTIVE = 9,
  KULS_STATUS_NOT_SYMMETRIC = 10,
  KULS_STATUS_DEGENERATE = 11,
  KULS_STATUS_CHARACTERISTIC_MISMATCH = 12,
  KULS_STATUS_BUDGET_EXCEEDED = 13,
  KULS_STATUS_INTERNAL = 14,
  KULS_STATUS_PANIC = 15,
} KulsStatus;

/**
 * Opaque handle to a finite-dimensional algebra with its multiplication table.
 */
typedef struct KulsAlgebra KulsAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds an algebra from presentation source text.
 *
 * # Safety
 * `source` must be a NUL-terminated string and `out` a valid pointer.
 */
enum KulsStatus kuls_algebra_from_dsl(const char *source, struct KulsAlgebra **out);

/**
 * Builds a member of a built-in family over GF(p^e), e.g. `"Omega"`, `"n=2"`.
 *
 * # Safety
 * `name` and `params` must be NUL-terminated strings and `out` a valid pointer.
 */
enum KulsStatus kuls_algebra_from_family(const char *name,
                                         const char *params,
                                         uint32_t p,
                                         uint32_t e,
                                         struct KulsAlgebra **out);

/**
 * Dimension of the algebra over its field.
 *
 * # Safety
 * `algebra` must be a live handle and `out` a valid pointer.
 */
enum KulsStatus kuls_algebra_dim(const struct KulsAlgebra *algebra, uintptr_t *out);

/**
 * Canonical JSON report of the Reynolds ideal sequence. `max_n = 0` selects
 * the default range.
 *
 * # Safety
 * `algebra` must be a live handle and `out_json` a valid pointer.
 */
enum KulsStatus kuls_invariants_json(const struct KulsAlgebra *algebra,
                                     uint32_t max_n,
                                     char **out_json);

/**
 * Verdict JSON comparing the Reynolds ideal sequences of two algebras.
 *
 * # Safety
 * `a` and `b` must be live handles and `out_json` a valid pointer.
 */
enum KulsStatus kuls_compare_json(const struct KulsAlgebra *a,
                                  const struct KulsAlgebra *b,
                                  uint32_t max_n,
                                  char **out_json);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `algebra` must be NULL or a handle not yet freed.
 */
void kuls_algebra_free(struct KulsAlgebra *algebra);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must be NULL or a string from this library not yet freed.
 */
void kuls_string_free(char *s);

/**
 * Message for the last failed call on this thread, or NULL. The pointer
 * stays valid until the next call into the library from the same thread.
 */
const char *kuls_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *kuls_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KULS_H */
