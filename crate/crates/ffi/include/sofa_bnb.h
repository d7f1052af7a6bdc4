#ifndef SOFA_BNB_H
#define SOFA_BNB_H

/* Generated from the Rust sources by cbindgen; edit those instead. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum SofaStatus {
  SOFA_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  SOFA_STATUS_NULL_POINTER = 1,
  /**
   * An argument was not understood (bad UTF-8, unknown name, zero size).
   */
  SOFA_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Profile text did not parse or validate.
   */
  SOFA_STATUS_PARSE_ERROR = 3,
  /**
   * The engine refused the configuration.
   */
  SOFA_STATUS_ENGINE_ERROR = 4,
  /**
   * The output buffer cannot hold the result.
   */
  SOFA_STATUS_BUFFER_TOO_SMALL = 5,
  /**
   * An internal invariant failed; the library caught a panic.
   */
  SOFA_STATUS_PANIC = 6,
} SofaStatus;

/**
 * The certified outcome of a finished run. The stored bounds are exact
 * rationals; accessors render them outward-rounded. Destroy with
 * [`sofa_certificate_free`].
 */
typedef struct SofaCertificate SofaCertificate;

/**
 * An immutable problem description (corridor slopes, final-slope window,
 * stop criteria). Create with [`sofa_problem_parse`] or
 * [`sofa_problem_bundled`]; destroy with [`sofa_problem_free`].
 */
typedef struct SofaProblem SofaProblem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string; never freed.
 */
const char *sofa_bnb_version(void);

/**
 * Parses profile text into a new problem handle.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be a valid
 * pointer. On success `*out` owns the problem and must be released with
 * [`sofa_problem_free`]. On failure `*out` is set to null.
 */
enum SofaStatus sofa_problem_parse(const char *text, struct SofaProblem **out);

/**
 * Loads one of the profiles shipped with the library by name.
 *
 * # Safety
 * Same contract as [`sofa_problem_parse`].
 */
enum SofaStatus sofa_problem_bundled(const char *name, struct SofaProblem **out);

/**
 * Releases a problem handle. Null is a no-op.
 *
 * # Safety
 * `problem` must be null or a pointer returned by a constructor that has
 * not been freed yet.
 */
void sofa_problem_free(struct SofaProblem *problem);

/**
 * Runs branch and bound to completion under the problem's stop criteria.
 * A nonzero `max_iterations` additionally caps the iteration count, which
 * also makes profiles without stop criteria runnable.
 *
 * # Safety
 * `problem` must be a live problem handle; `out` must be valid. On
 * success `*out` owns the certificate and must be released with
 * [`sofa_certificate_free`]. On failure `*out` is set to null.
 */
enum SofaStatus sofa_problem_run(const struct SofaProblem *problem,
                                 uint64_t max_iterations,
                                 struct SofaCertificate **out);

/**
 * Releases a certificate handle. Null is a no-op.
 *
 * # Safety
 * `cert` must be null or a pointer returned by [`sofa_problem_run`] that
 * has not been freed yet.
 */
void sofa_certificate_free(struct SofaCertificate *cert);

/**
 * Iterations the run performed; 0 when `cert` is null.
 *
 * # Safety
 * `cert` must be null or a live certificate handle.
 */
uint64_t sofa_certificate_iterations(const struct SofaCertificate *cert);

/**
 * Writes the certified upper bound, rounded up at `digits` decimals, as a
 * NUL-terminated string.
 *
 * # Safety
 * `cert` must be a live certificate handle; `buf` must point to at least
 * `len` writable bytes.
 */
enum SofaStatus sofa_certificate_upper_decimal(const struct SofaCertificate *cert,
                                               uint32_t digits,
                                               char *buf,
                                               uintptr_t len);

/**
 * Writes the certified lower bound, rounded down at `digits` decimals, as
 * a NUL-terminated string.
 *
 * # Safety
 * Same contract as [`sofa_certificate_upper_decimal`].
 */
enum SofaStatus sofa_certificate_lower_decimal(const struct SofaCertificate *cert,
                                               uint32_t digits,
                                               char *buf,
                                               uintptr_t len);

/**
 * Stores double approximations of the exact bounds. The doubles are
 * nearest-value conversions and may round in either direction; use the
 * decimal accessors when one-sided rounding matters.
 *
 * # Safety
 * `cert` must be a live certificate handle; `upper` and `lower` must be
 * valid pointers.
 */
enum SofaStatus sofa_certificate_bounds_f64(const struct SofaCertificate *cert,
                                            double *upper,
                                            double *lower);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SOFA_BNB_H */
