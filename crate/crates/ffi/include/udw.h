#ifndef UDW_H
#define UDW_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define UDW_MEASURE_CONCURRENCE 1

#define UDW_MEASURE_LQU (1 << 1)

#define UDW_MEASURE_UIN (1 << 2)

#define UDW_MEASURE_COHERENCE (1 << 3)

#define UDW_MEASURE_ALL 15

// Result code of every fallible call.
typedef enum UdwStatus {
  UDW_STATUS_OK = 0,
  UDW_STATUS_NULL_POINTER = 1,
  UDW_STATUS_INVALID_ARGUMENT = 2,
  UDW_STATUS_NUMERICAL = 3,
  UDW_STATUS_PANIC = 4,
} UdwStatus;

// Opaque two-qubit density matrix.
typedef struct UdwState UdwState;

typedef struct UdwMeasureReport {
  double concurrence;
  double lqu;
  double uin;
  double coherence_l1;
} UdwMeasureReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message describing the last failure on this thread, or NULL. The pointer
// stays valid until the next `udw_*` call on the same thread.
const char *udw_last_error(void);

// Builds the equilibrium state for `(t_u, omega, delta0)`.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum UdwStatus udw_state_new_equilibrium(double t_u,
                                         double omega,
                                         double delta0,
                                         struct UdwState **out);

// Builds `ρ_a ⊗ ρ_b` from two Bloch vectors of three doubles each.
//
// # Safety
// `n` and `m` must each point to 3 readable doubles; `out` must be writable.
enum UdwStatus udw_state_new_product(const double *n, const double *m, struct UdwState **out);

// Releases a handle. NULL is ignored.
//
// # Safety
// `state` must come from a `udw_state_new_*` call and not have been freed.
void udw_state_free(struct UdwState *state);

// Copies the 16 entries, row-major in the basis |00>, |01>, |10>, |11>.
//
// # Safety
// `state` must be a live handle; `re` and `im` must each have room for 16 doubles.
enum UdwStatus udw_state_entries(const struct UdwState *state, double *re, double *im);

// `Σ_i Tr[ρ σ_i ⊗ σ_i]`.
//
// # Safety
// `state` must be a live handle and `out` writable.
enum UdwStatus udw_state_delta0(const struct UdwState *state, double *out);

// # Safety
// `state` must be a live handle and `out` writable.
enum UdwStatus udw_measure_all(const struct UdwState *state, struct UdwMeasureReport *out);

// Entanglement death temperature. `*found` is false when there is none; `*t_u` is then NaN.
//
// # Safety
// `found` and `t_u` must be writable.
enum UdwStatus udw_death_temperature(double omega, double delta0, bool *found, double *t_u);

// Coherence dark point. `*found` is false when there is none; `*t_u` is then NaN.
//
// # Safety
// `found` and `t_u` must be writable.
enum UdwStatus udw_dark_point(double omega, double delta0, bool *found, double *t_u);

// # Safety
// `out` must be writable.
enum UdwStatus udw_revival_check(double omega, double delta0, bool *out);

// # Safety
// `out` must be writable.
enum UdwStatus udw_temperature_from_acceleration(double acceleration, double *out);

// Runs a sweep and returns the CSV text (same bytes as the `sweep` CLI command).
// `threads = 0` uses the default pool size. Free `*out_csv` with `udw_string_free`.
//
// # Safety
// `omegas` / `delta0s` must point to `n_omegas` / `n_delta0s` readable doubles
// and `out_csv` must be writable.
enum UdwStatus udw_sweep_csv(double tu_start,
                             double tu_stop,
                             size_t tu_steps,
                             const double *omegas,
                             size_t n_omegas,
                             const double *delta0s,
                             size_t n_delta0s,
                             uint32_t measure_mask,
                             size_t threads,
                             char **out_csv);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void udw_string_free(char *s);

// Version string of the library, static storage.
const char *udw_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UDW_H */
