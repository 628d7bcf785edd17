#ifndef QRECALL_H
#define QRECALL_H

/* Generated by cbindgen from qrecall-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every fallible call.
 */
typedef enum QrStatus {
  /**
   * Success.
   */
  QR_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  QR_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  QR_STATUS_INVALID_UTF8 = 2,
  /**
   * The input could not be parsed (malformed JSON or document shape).
   */
  QR_STATUS_PARSE_ERROR = 3,
  /**
   * The input parsed but failed validation (not a state, bad range, ...).
   */
  QR_STATUS_VALIDATION_ERROR = 4,
  /**
   * A scalar argument was out of range.
   */
  QR_STATUS_INVALID_ARGUMENT = 5,
  /**
   * An internal invariant failed; the call did not complete.
   */
  QR_STATUS_INTERNAL_ERROR = 6,
} QrStatus;

/**
 * Noise channel family for [`qr_sweep_csv`].
 */
typedef enum QrNoiseKind {
  QR_NOISE_KIND_DEPOLARIZING = 0,
  QR_NOISE_KIND_DEPHASING = 1,
} QrNoiseKind;

/**
 * Opaque two-qubit (or single-qubit) density-matrix handle.
 */
typedef struct QrState QrState;

/**
 * Headline scalar measures of one state. Discord fields carry the measured
 * side in the name: `d_ba_*` measures qubit A (information about B),
 * `d_ab_*` measures qubit B.
 */
typedef struct QrSummary {
  double entropy_a;
  double entropy_b;
  double entropy_joint;
  double mutual_information;
  double d_ba_fixed;
  double d_ab_fixed;
  double d_ba_opt;
  double d_ab_opt;
  double negativity;
  double chsh_max;
} QrSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Version of the library as a static NUL-terminated string. Never freed.
 */
const char *qr_version(void);

/**
 * New handle to the canonical coordination state. Never fails.
 */
struct QrState *qr_state_coordination(void);

/**
 * New handle to the maximally entangled Bell state. Never fails.
 */
struct QrState *qr_state_bell(void);

/**
 * Parse a state from its JSON document `{"dim": n, "re": [[..]], "im":
 * [[..]]}` and validate it.
 *
 * # Safety
 * `json` must point to a NUL-terminated string; `out` must be a valid
 * pointer. On success `*out` owns the new handle.
 */
enum QrStatus qr_state_from_json(const char *json, struct QrState **out);

/**
 * Build and validate a state from row-major entry arrays of length
 * `dim * dim`. `im` may be null for a real matrix.
 *
 * # Safety
 * `re` (and `im` when non-null) must point to `dim * dim` readable doubles;
 * `out` must be a valid pointer. On success `*out` owns the new handle.
 */
enum QrStatus qr_state_from_parts(size_t dim,
                                  const double *re,
                                  const double *im,
                                  struct QrState **out);

/**
 * Serialize a state to its JSON document.
 *
 * # Safety
 * `state` must be a live handle from this library; `out` must be valid.
 * On success `*out` owns a NUL-terminated string.
 */
enum QrStatus qr_state_to_json(const struct QrState *state, char **out);

/**
 * Fill `out` with the headline measures of a two-qubit state. The
 * basis-optimized discord search runs on a grid with `grid_divisions`
 * polar divisions (36 is the default resolution; minimum 2) plus local
 * refinement.
 *
 * # Safety
 * `state` must be a live handle; `out` must point to a writable
 * [`QrSummary`].
 */
enum QrStatus qr_state_summary(const struct QrState *state,
                               size_t grid_divisions,
                               struct QrSummary *out);

/**
 * Full correlation report of a two-qubit state as a JSON string (same
 * schema as the CLI's `analyze --format json`).
 *
 * # Safety
 * `state` must be a live handle; `out` must be valid. On success `*out`
 * owns a NUL-terminated string.
 */
enum QrStatus qr_state_report_json(const struct QrState *state, size_t grid_divisions, char **out);

/**
 * Expected payoff of the canonical measurement strategy (measure A in Z for
 * stage 1, B in X for stage 2, alternation payoff) played on `state`.
 *
 * # Safety
 * `state` must be a live two-qubit handle; `out` must point to a writable
 * double.
 */
enum QrStatus qr_coordination_payoff(const struct QrState *state, double *out);

/**
 * Sample `plays` rounds of the canonical strategy on `state` with a seeded
 * deterministic generator. `out_counts` receives four counts in the order
 * (L,L), (L,R), (R,L), (R,R).
 *
 * # Safety
 * `state` must be a live two-qubit handle; `out_counts` must point to four
 * writable uint64 values.
 */
enum QrStatus qr_simulate_counts(const struct QrState *state,
                                 uint64_t seed,
                                 uint64_t plays,
                                 uint64_t *out_counts);

/**
 * Robustness sweep of `state` under a noise family applied to both qubits,
 * as CSV with a fixed header (same format as the CLI's `sweep`). `steps`
 * strengths are sampled evenly on [0, 1]; minimum 2.
 *
 * # Safety
 * `state` must be a live two-qubit handle; `out` must be valid. On success
 * `*out` owns a NUL-terminated string.
 */
enum QrStatus qr_sweep_csv(const struct QrState *state,
                           enum QrNoiseKind kind,
                           size_t steps,
                           char **out);

/**
 * Release a state handle. Null is a no-op.
 *
 * # Safety
 * `state` must be null or a handle returned by this library that has not
 * been freed yet.
 */
void qr_state_free(struct QrState *state);

/**
 * Release a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must be null or a string returned by this library that has not been
 * freed yet.
 */
void qr_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QRECALL_H */
