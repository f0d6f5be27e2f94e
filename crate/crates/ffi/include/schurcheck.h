/* schurcheck C interface.
 *
 * ScGroup and ScReport are opaque handles owned by the caller and released
 * with sc_group_free / sc_report_free. Every fallible call returns an
 * ScStatus; sc_last_error holds the message of the last failure on the
 * calling thread.
 *
 * Buffer convention: string results are copied into (buf, len) with a
 * terminating NUL. The required size, NUL included, is always stored in
 * *needed when needed is not null, and SC_STATUS_BUFFER_TOO_SMALL is
 * returned when len is short. */

#ifndef SCHURCHECK_H
#define SCHURCHECK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  SC_STATUS_OK = 0,
  SC_STATUS_NULL_POINTER = 1,
  SC_STATUS_INVALID_UTF8 = 2,
  SC_STATUS_SYNTAX = 3,
  SC_STATUS_DOMAIN = 4,
  SC_STATUS_DATA = 5,
  SC_STATUS_NO_TABLE_ROW = 6,
  SC_STATUS_UNSUPPORTED = 7,
  SC_STATUS_BUFFER_TOO_SMALL = 8,
  SC_STATUS_PANIC = 9,
} ScStatus;

/**
 * A parsed group such as `SL(3,2)`.
 */
typedef struct ScGroup ScGroup;

/**
 * The outcome of a lemma verification run.
 */
typedef struct ScReport ScReport;

typedef struct {
  uint64_t cases;
  uint64_t eliminated;
  uint64_t unresolved;
  uint64_t failed;
  /**
   * 0 when every expectation holds, 1 otherwise.
   */
  int32_t exit_code;
} ScSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code. Never null.
 */
const char *sc_status_str(ScStatus status);

/**
 * Message of the last failed call on this thread.
 *
 * # Safety
 * Buffer convention: `buf` points to `len` writable bytes (or is null with
 * `len == 0`); `needed` may be null.
 */
ScStatus sc_last_error(char *buf, size_t len, size_t *needed);

/**
 * Parses a group name such as `PSp(6,3^2)` or `E8(2^9)`.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
ScStatus sc_group_parse(const char *text, ScGroup **out);

/**
 * # Safety
 * `group` must come from `sc_group_parse` and not be used afterwards. Null is ignored.
 */
void sc_group_free(ScGroup *group);

/**
 * Canonical name of the group.
 *
 * # Safety
 * `group` must be a live handle; `buf`, `len`, `needed` follow the buffer convention.
 */
ScStatus sc_group_name(const ScGroup *group, char *buf, size_t len, size_t *needed);

/**
 * Group order in decimal.
 *
 * # Safety
 * `group` must be a live handle; `buf`, `len`, `needed` follow the buffer convention.
 */
ScStatus sc_group_order(const ScGroup *group, char *buf, size_t len, size_t *needed);

/**
 * Steinberg character degree in decimal.
 *
 * # Safety
 * `group` must be a live handle; `buf`, `len`, `needed` follow the buffer convention.
 */
ScStatus sc_group_steinberg(const ScGroup *group, char *buf, size_t len, size_t *needed);

/**
 * Whether `|l|` divides `|h|`, by exact division.
 *
 * # Safety
 * Both handles must be live and `out` valid.
 */
ScStatus sc_divides_exact(const ScGroup *l, const ScGroup *h, bool *out);

/**
 * Largest `e` such that a primitive prime divisor of `p^e - 1` divides
 * `|l|` but not `|h|`. `*found` is false when there is none.
 *
 * # Safety
 * Both handles must be live; `e` and `found` must be valid.
 */
ScStatus sc_witness(const ScGroup *l, const ScGroup *h, uint64_t *e, bool *found);

/**
 * Whether `x^n - y^n` has a primitive prime divisor.
 *
 * # Safety
 * `out` must be valid.
 */
ScStatus sc_ppd_exists(uint64_t x, uint64_t y, uint64_t n, bool *out);

/**
 * Runs one lemma (`"lemma-4.1"`, `"5.1"`, ...) or `"all"` with the default
 * sampling and the built-in data and manifest.
 *
 * # Safety
 * `lemma` must be a NUL-terminated string and `out` a valid pointer.
 */
ScStatus sc_verify(const char *lemma, ScReport **out);

/**
 * # Safety
 * `report` must come from `sc_verify` and not be used afterwards. Null is ignored.
 */
void sc_report_free(ScReport *report);

/**
 * # Safety
 * `report` must be a live handle and `out` valid.
 */
ScStatus sc_report_summary(const ScReport *report, ScSummary *out);

/**
 * The report as JSON.
 *
 * # Safety
 * `report` must be a live handle; `buf`, `len`, `needed` follow the buffer convention.
 */
ScStatus sc_report_json(const ScReport *report, char *buf, size_t len, size_t *needed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SCHURCHECK_H */
