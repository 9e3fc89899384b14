#ifndef SPMOMENTS_H
#define SPMOMENTS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible function.
typedef enum SpmStatus {
  SPM_STATUS_OK = 0,
  SPM_STATUS_NULL_POINTER = 1,
  SPM_STATUS_INVALID_ARGUMENT = 2,
  SPM_STATUS_NUMERICAL = 3,
  SPM_STATUS_DATASET = 4,
  SPM_STATUS_IO = 5,
  SPM_STATUS_PANIC = 6,
} SpmStatus;

// A loaded Hecke-Maass dataset.
typedef struct SpmDataset SpmDataset;

// Exponential sums modulo a fixed `r`.
typedef struct SpmExpSums SpmExpSums;

// The weight `W_{A,B}`.
typedef struct SpmWeight SpmWeight;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static NUL-terminated string.
const char *spm_version(void);

// Copy the last error message of this thread into `buf` (truncated, always
// NUL-terminated when `len > 0`). Returns the full message length.
//
// # Safety
// `buf` must be null or point to `len` writable bytes.
uintptr_t spm_last_error(char *buf, uintptr_t len);

// # Safety
// `out` must be a valid pointer; the handle is released with [`spm_expsums_free`].
enum SpmStatus spm_expsums_new(uint64_t r, struct SpmExpSums **out);

// # Safety
// `h` must be null or a handle from [`spm_expsums_new`] not yet freed.
void spm_expsums_free(struct SpmExpSums *h);

// `S(k, n; r)` (real and imaginary parts).
//
// # Safety
// `h` must be a live handle; `re` and `im` must be writable.
enum SpmStatus spm_kloosterman(const struct SpmExpSums *h,
                               int64_t k,
                               int64_t n,
                               double *re,
                               double *im);

// `gcd(k, n, r)^{1/2} d(r) r^{1/2} - |S(k, n; r)|`.
//
// # Safety
// `h` must be a live handle; `out` must be writable.
enum SpmStatus spm_weil_margin(const struct SpmExpSums *h, int64_t k, int64_t n, double *out);

// # Safety
// `out` must be a valid pointer; release with [`spm_weight_free`].
enum SpmStatus spm_weight_new(double a, double b, struct SpmWeight **out);

// # Safety
// `h` must be null or a live handle from [`spm_weight_new`].
void spm_weight_free(struct SpmWeight *h);

// `W_{A,B}(x)` to absolute tolerance `tol`.
//
// # Safety
// `h` must be a live handle; `re` and `im` must be writable.
enum SpmStatus spm_weight_eval(const struct SpmWeight *h,
                               double x,
                               double tol,
                               double *re,
                               double *im);

// Closed-form Fourier transform of `W_{A,B}` at `u`.
//
// # Safety
// `h` must be a live handle; `re` and `im` must be writable.
enum SpmStatus spm_weight_hat(const struct SpmWeight *h,
                              double u,
                              double tol,
                              double *re,
                              double *im);

// Load a JSON-lines dataset; a null `path` loads the bundled table.
//
// # Safety
// `path` must be null or a NUL-terminated UTF-8 string; `out` must be valid.
enum SpmStatus spm_dataset_load(const char *path, struct SpmDataset **out);

// # Safety
// `h` must be null or a live handle from [`spm_dataset_load`].
void spm_dataset_free(struct SpmDataset *h);

// Number of forms; 0 for a null handle.
//
// # Safety
// `h` must be null or a live handle.
uintptr_t spm_dataset_len(const struct SpmDataset *h);

// Spectral parameter of form `index`.
//
// # Safety
// `h` must be a live handle; `out` must be writable.
enum SpmStatus spm_dataset_t(const struct SpmDataset *h, uintptr_t index, double *out);

// Hecke eigenvalue `lambda(n)` of form `index`.
//
// # Safety
// `h` must be a live handle; `out` must be writable.
enum SpmStatus spm_dataset_lambda(const struct SpmDataset *h,
                                  uintptr_t index,
                                  uint64_t n,
                                  double *out);

// Run acceptance criterion `id` (1..=15). `dataset` may be null for the
// bundled table. Outputs: whether every check passed, the number of checks
// and the number of failures.
//
// # Safety
// `dataset` must be null or a live handle; the out pointers must be writable.
enum SpmStatus spm_run_criterion(uint8_t id,
                                 uint64_t seed,
                                 const struct SpmDataset *dataset,
                                 bool *pass,
                                 uintptr_t *checks,
                                 uintptr_t *failures);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPMOMENTS_H */
