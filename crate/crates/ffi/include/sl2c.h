#ifndef SL2C_H
#define SL2C_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define SL2C_FAMILY_I 1

#define SL2C_FAMILY_II 2

#define SL2C_FAMILY_III 3

#define SL2C_BRANCH_UPPER 1

#define SL2C_BRANCH_LOWER -1

#define SL2C_SERIES_A 0

#define SL2C_SERIES_B 1

typedef enum Sl2cStatus {
  SL2C_STATUS_OK = 0,
  SL2C_STATUS_INVALID_ARGUMENT = 1,
  SL2C_STATUS_POLE = 2,
  SL2C_STATUS_NOT_BOUND = 3,
  SL2C_STATUS_NON_CONVERGENCE = 4,
  SL2C_STATUS_NULL_POINTER = 5,
  SL2C_STATUS_BUFFER_TOO_SMALL = 6,
  SL2C_STATUS_NUMERIC = 7,
  SL2C_STATUS_PANIC = 8,
} Sl2cStatus;

/**
 * A solved `(F, G)` pair.
 */
typedef struct Sl2cFamily Sl2cFamily;

/**
 * Scarf II parameters `(A, B)`.
 */
typedef struct Sl2cScarf Sl2cScarf;

/**
 * Outcome of a finite-difference spectrum check.
 */
typedef struct Sl2cSpectrumReport Sl2cSpectrumReport;

typedef struct Sl2cComplex {
  double re;
  double im;
} Sl2cComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread, NUL-terminated and
 * truncated to `cap` bytes, into `buf`. Returns the size needed for the
 * full message including the terminator. `buf` may be null when `cap` is 0.
 */
size_t sl2c_last_error_message(char *buf, size_t cap);

/**
 * Library version as a static NUL-terminated string.
 */
const char *sl2c_version(void);

/**
 * `E_n = -(m - n - 1/2)^2`. Fails with `NotBound` unless `n < m - 1/2`.
 */
enum Sl2cStatus sl2c_energy(double m, size_t n, double *energy_out);

/**
 * Number of bound states of `V_m`.
 */
size_t sl2c_bound_state_count(double m);

/**
 * Creates a family handle. `kind` is one of `SL2C_FAMILY_*`, `branch` one
 * of `SL2C_BRANCH_*` (only used by family III).
 */
enum Sl2cStatus sl2c_family_new(int kind,
                                struct Sl2cComplex b,
                                double c,
                                double gamma,
                                int branch,
                                struct Sl2cFamily **family_out);

void sl2c_family_free(struct Sl2cFamily *family);

/**
 * `V_m(x)` of the family.
 */
enum Sl2cStatus sl2c_family_potential(const struct Sl2cFamily *family,
                                      double m,
                                      double x,
                                      struct Sl2cComplex *v_out);

/**
 * Largest residuals of `F' = 1 - F^2` and `G' = -F G` over `xs`.
 */
enum Sl2cStatus sl2c_family_ode_residual(const struct Sl2cFamily *family,
                                         const double *xs,
                                         size_t len,
                                         double *f_residual_out,
                                         double *g_residual_out);

/**
 * Creates a Scarf II handle. Requires `A + 1/2 > 0` and `B > 0`.
 */
enum Sl2cStatus sl2c_scarf_new(double a, double b, struct Sl2cScarf **scarf_out);

void sl2c_scarf_free(struct Sl2cScarf *scarf);

enum Sl2cStatus sl2c_scarf_potential(const struct Sl2cScarf *scarf,
                                     double x,
                                     struct Sl2cComplex *v_out);

/**
 * Energies of one series (`SL2C_SERIES_A` or `SL2C_SERIES_B`) in
 * increasing `n`. `len_out` always receives the level count; pass
 * `cap = 0` to query it.
 */
enum Sl2cStatus sl2c_scarf_spectrum(const struct Sl2cScarf *scarf,
                                    int series,
                                    double *energies,
                                    size_t cap,
                                    size_t *len_out);

/**
 * Closed-form, unnormalized wavefunction of level `n` of `series` at the
 * `len` points `xs`, written to `psi`.
 */
enum Sl2cStatus sl2c_scarf_wavefunction(const struct Sl2cScarf *scarf,
                                        int series,
                                        size_t n,
                                        const double *xs,
                                        size_t len,
                                        struct Sl2cComplex *psi);

/**
 * Finite-difference check of the Scarf II spectrum on `[x_min, x_max]` with
 * `n_points` interior nodes. Passing `x_min >= x_max` selects `[-15, 15]`;
 * `richardson != 0` combines the grid with its refinement.
 */
enum Sl2cStatus sl2c_verify_scarf(const struct Sl2cScarf *scarf,
                                  double x_min,
                                  double x_max,
                                  size_t n_points,
                                  int richardson,
                                  struct Sl2cSpectrumReport **report_out);

void sl2c_report_free(struct Sl2cSpectrumReport *report);

/**
 * Summary of a report. `unmatched` excludes levels absorbed by a coincident
 * level or a split cluster. All out-pointers are optional.
 */
enum Sl2cStatus sl2c_report_summary(const struct Sl2cSpectrumReport *report,
                                    size_t *matched_out,
                                    size_t *unmatched_out,
                                    size_t *spurious_out,
                                    double *max_gap_out,
                                    double *max_imag_out,
                                    double *hermitian_defect_out);

/**
 * 1 if every analytic level was accounted for and no spurious eigenvalue
 * was found, 0 otherwise or when `report` is null.
 */
int sl2c_report_passed(const struct Sl2cSpectrumReport *report);

/**
 * Matched pairs: analytic energies into `analytic`, eigenvalues into
 * `numeric`, both of capacity `cap`.
 */
enum Sl2cStatus sl2c_report_matches(const struct Sl2cSpectrumReport *report,
                                    double *analytic,
                                    struct Sl2cComplex *numeric,
                                    size_t cap,
                                    size_t *len_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SL2C_H */
