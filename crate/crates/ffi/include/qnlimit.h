#ifndef QNLIMIT_H
#define QNLIMIT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code returned by every fallible function.
 */
typedef enum QnlStatus {
  QNL_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  QNL_STATUS_NULL_POINTER = 1,
  /**
   * Out-of-range argument or malformed string.
   */
  QNL_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Configuration failed to parse or validate.
   */
  QNL_STATUS_INVALID_CONFIG = 3,
  /**
   * Numerical degeneracy at the requested frequency (lasing, blind
   * quadrature, singular covariance, expansion outside its domain).
   */
  QNL_STATUS_DEGENERACY = 4,
  /**
   * Caller-provided buffer is too small.
   */
  QNL_STATUS_BUFFER_TOO_SMALL = 5,
  /**
   * Internal error; the library caught a panic.
   */
  QNL_STATUS_INTERNAL = 6,
} QnlStatus;

/**
 * Opaque interferometer handle.
 */
typedef struct QnlInterferometer QnlInterferometer;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *qnl_version(void);

/**
 * Copies the calling thread's last error message into `buf` (NUL-terminated,
 * truncated to `len`). Returns the full message length excluding the NUL.
 */
size_t qnl_last_error_message(char *buf, size_t len);

/**
 * Built-in design point over the default 5 Hz – 5 kHz band.
 */
enum QnlStatus qnl_interferometer_new_default(struct QnlInterferometer **out);

/**
 * Parses a JSON configuration and binds it to the band `[f_min_hz, f_max_hz]`.
 */
enum QnlStatus qnl_interferometer_from_json(const char *json,
                                            double f_min_hz,
                                            double f_max_hz,
                                            struct QnlInterferometer **out);

/**
 * Releases a handle. Null is ignored.
 */
void qnl_interferometer_free(struct QnlInterferometer *h);

/**
 * Optimal-readout strain PSD [1/Hz] and the homodyne angle that attains it.
 * `zeta_opt` may be null.
 */
enum QnlStatus qnl_optimal_spectrum(const struct QnlInterferometer *h,
                                    double omega,
                                    double *s_hh,
                                    double *zeta_opt);

/**
 * Strain PSD for a fixed homodyne angle `zeta` [rad].
 */
enum QnlStatus qnl_homodyne_spectrum(const struct QnlInterferometer *h,
                                     double omega,
                                     double zeta,
                                     double *s_hh);

/**
 * Evaluates a budget curve by name (`sql`, `qcrb`, `loss_limit_a1`,
 * `loss_limit_a4`, `full_optimal`, `full_fixed_zeta(<rad>)`, `fdt_floor`,
 * `taylor_*`).
 */
enum QnlStatus qnl_curve(const struct QnlInterferometer *h,
                         const char *name,
                         double omega,
                         double *s_hh);

/**
 * Lossless optimal-readout PSD (quantum Cramér–Rao bound).
 */
enum QnlStatus qnl_qcrb(const struct QnlInterferometer *h, double omega, double *s_hh);

/**
 * Standard quantum limit PSD.
 */
enum QnlStatus qnl_sql(const struct QnlInterferometer *h, double omega, double *s_hh);

/**
 * First-order loss-induced limit; `alpha` must be 1 or 0.25.
 */
enum QnlStatus qnl_loss_limit(const struct QnlInterferometer *h,
                              double omega,
                              double alpha,
                              double *s_hh);

/**
 * Arm-loss floor from the fluctuation–dissipation theorem.
 */
enum QnlStatus qnl_fdt_floor(const struct QnlInterferometer *h, double omega, double *s_hh);

/**
 * Optimal-readout PSD at `n` frequencies in Hz, written to `out[0..n]`.
 */
enum QnlStatus qnl_sweep_optimal(const struct QnlInterferometer *h,
                                 const double *f_hz,
                                 size_t n,
                                 double *out);

/**
 * Writes the handle's configuration as JSON into `buf` (NUL-terminated).
 * `needed` receives the length excluding the NUL; with a short buffer the
 * call returns `QnlStatus::BufferTooSmall` and writes nothing else.
 */
enum QnlStatus qnl_config_json(const struct QnlInterferometer *h,
                               char *buf,
                               size_t len,
                               size_t *needed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QNLIMIT_H */
