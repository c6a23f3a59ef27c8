#ifndef SQRANK_H
#define SQRANK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum SqStatus {
  SQ_STATUS_OK = 0,
  SQ_STATUS_NULL_POINTER = 1,
  SQ_STATUS_INVALID_INPUT = 2,
  SQ_STATUS_DOMAIN = 3,
  // A coefficient does not fit the requested integer type.
  SQ_STATUS_OVERFLOW = 4,
  SQ_STATUS_INTERNAL = 5,
} SqStatus;

// Opaque integer partition.
typedef struct SqPartition SqPartition;

// Opaque q-series with exact integer coefficients.
typedef struct SqSeries SqSeries;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failing call on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread.
const char *sq_last_error(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed already.
void sq_string_free(char *s);

// Parses `"5,3,3,1"` or `"3^2 1^4"` (empty string for the empty partition).
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum SqStatus sq_partition_parse(const char *text, struct SqPartition **out);

// Builds a partition from `len` weakly decreasing positive parts.
//
// # Safety
// `parts` must point to `len` readable values (may be NULL when `len` is 0).
enum SqStatus sq_partition_from_parts(const uint32_t *parts, size_t len, struct SqPartition **out);

// # Safety
// `p` must come from this library and not have been freed already.
void sq_partition_free(struct SqPartition *p);

// Sum of parts, or 0 for NULL.
//
// # Safety
// `p` must be NULL or a live handle.
size_t sq_partition_weight(const struct SqPartition *p);

// Number of parts, or 0 for NULL.
//
// # Safety
// `p` must be NULL or a live handle.
size_t sq_partition_len(const struct SqPartition *p);

// Copies up to `cap` parts into `buf` and returns the total number of
// parts, so a call with `cap = 0` sizes the buffer.
//
// # Safety
// `p` must be NULL or a live handle; `buf` must have room for `cap` values.
size_t sq_partition_parts(const struct SqPartition *p, uint32_t *buf, size_t cap);

// sqrank (`which = 0`) or rerank (`which = 1`).
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum SqStatus sq_stat(const struct SqPartition *p, uint32_t which, size_t *out);

// # Safety
// `p` must be a live handle; `out` must be writable.
enum SqStatus sq_sqrank(const struct SqPartition *p, size_t *out);

// # Safety
// `p` must be a live handle; `out` must be writable.
enum SqStatus sq_rerank(const struct SqPartition *p, size_t *out);

// Least positive integer congruent to `a` mod `modulus` that is not a part.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum SqStatus sq_mex(const struct SqPartition *p, uint32_t modulus, uint32_t a, size_t *out);

// Side `n` of the largest `n x (n+a)` rectangle in the diagram.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum SqStatus sq_durfee_side(const struct SqPartition *p, uint32_t a, size_t *out);

// The statistic `E1(λ; n)` on partitions inside an `n`-row box.
//
// # Safety
// `p` must be a live handle; `out` must be writable.
enum SqStatus sq_e1_stat(const struct SqPartition *p, size_t n, size_t *out);

// Gaussian binomial `[l, m]`; zero outside `0 <= m <= l`.
//
// # Safety
// `out` must be writable.
enum SqStatus sq_gaussian(int64_t l, int64_t m, struct SqSeries **out);

// Configuration sum over words of length `l` with `s` ones; `r < 0`
// means no restriction on epsilon1.
//
// # Safety
// `out` must be writable.
enum SqStatus sq_config_sum(size_t l, size_t s, int64_t r, struct SqSeries **out);

// # Safety
// `s` must come from this library and not have been freed already.
void sq_series_free(struct SqSeries *s);

// Number of stored coefficients (degree + 1), or 0 for NULL.
//
// # Safety
// `s` must be NULL or a live handle.
size_t sq_series_len(const struct SqSeries *s);

// Coefficient of `q^k`. Returns `Overflow` if it does not fit in 64 bits.
//
// # Safety
// `s` must be a live handle; `out` must be writable.
enum SqStatus sq_series_coeff(const struct SqSeries *s, size_t k, int64_t *out);

// Renders the series as text; free the result with `sq_string_free`.
//
// # Safety
// `s` must be NULL or a live handle.
char *sq_series_to_string(const struct SqSeries *s);

// One box-ball step of a `0`/`1` string; the result is written to `out`
// as a new string to be freed with `sq_string_free`.
//
// # Safety
// `bits` must be a NUL-terminated string; `out` must be writable.
enum SqStatus sq_bbs_evolve(const char *bits, char **out);

// Runs one named check (or all when `check` is NULL) with the given
// bounds and writes a JSON document `{"pass": bool, "reports": [...]}`
// to `out`. A failing check is not an error: inspect `"pass"`.
//
// # Safety
// `check` must be NULL or a NUL-terminated string; `out` must be writable.
enum SqStatus sq_verify(const char *check,
                        size_t n_max,
                        size_t l_max,
                        size_t order,
                        size_t weight_max,
                        char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SQRANK_H */
