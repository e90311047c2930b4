#ifndef CHERN_CALCULUS_H
#define CHERN_CALCULUS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum ChernStatus {
  CHERN_STATUS_OK = 0,
  CHERN_STATUS_NULL_POINTER = 1,
  CHERN_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed partition, class or JSON input.
   */
  CHERN_STATUS_PARSE = 3,
  /**
   * Input outside the domain of the operation.
   */
  CHERN_STATUS_DOMAIN = 4,
  CHERN_STATUS_PRECONDITION = 5,
  /**
   * Internal ring mismatch.
   */
  CHERN_STATUS_CONTEXT = 6,
  /**
   * The computation ran but a checked identity failed.
   */
  CHERN_STATUS_VERIFICATION_FAILED = 7,
  CHERN_STATUS_PANIC = 8,
} ChernStatus;

/**
 * Opaque handle to a virtual bundle in the split model.
 */
typedef struct ChernKClass ChernKClass;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or NULL after a success.
 * The pointer stays valid until the next call into this library on the same thread.
 */
const char *chern_last_error_message(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *chern_version(void);

/**
 * Releases a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and must not be freed twice.
 */
void chern_string_free(char *s);

/**
 * Parses a class from `{"pos":[[..],..],"neg":[[..],..]}`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a writable pointer.
 */
enum ChernStatus chern_kclass_from_json(const char *json, struct ChernKClass **out);

/**
 * Releases a class handle. NULL is ignored.
 *
 * # Safety
 * `h` must come from this library and must not be freed twice.
 */
void chern_kclass_free(struct ChernKClass *h);

/**
 * Serializes a class to the same JSON shape accepted by [`chern_kclass_from_json`].
 *
 * # Safety
 * `h` must be a live handle and `out` a writable pointer.
 */
enum ChernStatus chern_kclass_to_json(const struct ChernKClass *h, char **out);

/**
 * Rank as a decimal string (ranks are unbounded integers).
 *
 * # Safety
 * `h` must be a live handle and `out` a writable pointer.
 */
enum ChernStatus chern_kclass_rank(const struct ChernKClass *h, char **out);

/**
 * `a + b` as a new handle.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` a writable pointer.
 */
enum ChernStatus chern_kclass_add(const struct ChernKClass *a,
                                  const struct ChernKClass *b,
                                  struct ChernKClass **out);

/**
 * `a ⊗ b` as a new handle.
 *
 * # Safety
 * `a`, `b` must be live handles and `out` a writable pointer.
 */
enum ChernStatus chern_kclass_tensor(const struct ChernKClass *a,
                                     const struct ChernKClass *b,
                                     struct ChernKClass **out);

/**
 * The dual class as a new handle.
 *
 * # Safety
 * `h` must be a live handle and `out` a writable pointer.
 */
enum ChernStatus chern_kclass_dual(const struct ChernKClass *h, struct ChernKClass **out);

/**
 * Total Chern class truncated at `degree`, as a JSON array of polynomials
 * in the root variables `u1, u2, ...`.
 *
 * # Safety
 * `h` must be a live handle and `out` a writable pointer.
 */
enum ChernStatus chern_kclass_total_chern_json(const struct ChernKClass *h,
                                               uint32_t degree,
                                               char **out);

/**
 * Gamma-filtration degree of `x - rank(x)` read below `degree`, as JSON
 * `{"kind":"finite","value":2}`, `{"kind":"at_least",...}` or `{"kind":"infinite"}`.
 *
 * # Safety
 * `h` must be a live handle and `out` a writable pointer.
 */
enum ChernStatus chern_kclass_filtration_degree_json(const struct ChernKClass *h,
                                                     uint32_t degree,
                                                     char **out);

/**
 * Littlewood-Richardson coefficient `c^mu_{eps,nu}`; partitions are written
 * as comma-separated parts, e.g. `"2,1"`, with `""` for the empty partition.
 *
 * # Safety
 * The strings must be NUL-terminated and `out` a writable pointer.
 */
enum ChernStatus chern_lr_coefficient(const char *mu,
                                      const char *eps,
                                      const char *nu,
                                      uint64_t *out);

/**
 * Additive rank of the boxed Schur model of Gr(m, n).
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum ChernStatus chern_grass_rank(size_t m, size_t n, size_t *out);

/**
 * Presentation report for Gr(m, n) as JSON. The report is written even when
 * a check fails, in which case the status is `VerificationFailed`.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum ChernStatus chern_grass_present_json(size_t m, size_t n, char **out);

/**
 * Runs the vanishing, factor and composition checks for `i = 1..=max_i`
 * and writes the reports as a JSON array. The reports are written even when
 * a check fails, in which case the status is `VerificationFailed`.
 *
 * # Safety
 * `out` must be a writable pointer.
 */
enum ChernStatus chern_grr_verify_json(uint32_t max_i, uint64_t seed, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHERN_CALCULUS_H */
