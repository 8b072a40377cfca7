/* SPDX-License-Identifier: Apache-2.0 */
#ifndef TPOE_TPOE_H
#define TPOE_TPOE_H

#include <stddef.h>
#include <stdint.h>

#if defined(TPOE_BUILDING_LIBRARY)
#define TPOE_API __attribute__((visibility("default")))
#else
#define TPOE_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. TPOE_OK is zero; every failure sets a thread-local message
 * readable through tpoe_last_error_message(). */
typedef enum tpoe_status {
  TPOE_OK = 0,
  TPOE_DOMAIN_MISMATCH = 1,
  TPOE_NON_HERMITIAN = 2,
  TPOE_INVALID_ARGUMENT = 3,
  TPOE_SINGULAR_MODE = 4,
  TPOE_NOT_PURELY_PERIODIC = 5,
  TPOE_NOT_TIME_CONSTANT = 6,
  TPOE_NON_SOLENOIDAL = 7,
  TPOE_INCOMPATIBLE_MEAN = 8,
  TPOE_INVALID_EXPONENT = 9,
  TPOE_INVALID_GRID = 10,
  TPOE_UNKNOWN_RECIPE = 11,
  TPOE_EMPTY_SWEEP = 12,
  TPOE_IO_FAILURE = 13,
  TPOE_INTERNAL = 14
} tpoe_status;

typedef enum tpoe_norm_tag {
  TPOE_NORM_LQ = 0,
  TPOE_NORM_SOBOLEV_21Q = 1,
  TPOE_NORM_STEADY_STOKES = 2,
  TPOE_NORM_STEADY_OSEEN = 3,
  TPOE_NORM_STEADY_OSEEN_2D = 4,
  TPOE_NORM_PRESSURE_XP = 5
} tpoe_norm_tag;

/* Space-time torus [0,L)^n x [0,T) sampled on N^n x Nt points. */
typedef struct tpoe_domain {
  int n;
  double L;
  int N;
  double T;
  int Nt;
} tpoe_domain;

typedef struct tpoe_params {
  double lambda;
  double T;
  double q;
} tpoe_params;

typedef struct tpoe_scan_grid {
  double r_min;
  double r_max;
  int shells;
  int directions;
  uint64_t seed;
} tpoe_scan_grid;

typedef struct tpoe_convergence_row {
  int N;
  int Nt;
  double residual;
  double recovery_error;
  double fd_residual;
  double fd_ratio;
} tpoe_convergence_row;

typedef struct tpoe_field tpoe_field;
typedef struct tpoe_solution tpoe_solution;
typedef struct tpoe_marcinkiewicz tpoe_marcinkiewicz;
typedef struct tpoe_sweep tpoe_sweep;
typedef struct tpoe_convergence tpoe_convergence;

TPOE_API const char* tpoe_version(void);
TPOE_API const char* tpoe_status_name(tpoe_status status);
/* Message of the last failure on this thread; empty after a success. */
TPOE_API const char* tpoe_last_error_message(void);

TPOE_API tpoe_status tpoe_domain_validate(const tpoe_domain* domain);
TPOE_API void tpoe_default_scan_grid(tpoe_scan_grid* grid);

/* Fields. `samples` may be NULL for a zero field; otherwise it holds
 * components * N^n * Nt values, component-major, then t, x1, ..., xn. */
TPOE_API tpoe_status tpoe_field_create(const tpoe_domain* domain, int components, const double* samples,
                                       tpoe_field** out);
TPOE_API void tpoe_field_destroy(tpoe_field* field);
TPOE_API tpoe_status tpoe_field_load(const char* path, tpoe_field** out);
TPOE_API tpoe_status tpoe_field_save(const tpoe_field* field, const char* path);
TPOE_API tpoe_status tpoe_field_info(const tpoe_field* field, tpoe_domain* domain, int* components);
/* Borrowed pointer valid until the field is destroyed. */
TPOE_API tpoe_status tpoe_field_samples(const tpoe_field* field, const double** data, size_t* count);
TPOE_API tpoe_status tpoe_field_max_abs_diff(const tpoe_field* a, const tpoe_field* b, double* out);
TPOE_API tpoe_status tpoe_lq_norm(const tpoe_field* field, double q, double* out);

/* Manufactured (u, p, f); any output pointer may be NULL. */
TPOE_API tpoe_status tpoe_manufactured_case(const char* recipe, const tpoe_domain* domain, const tpoe_params* params,
                                            uint64_t seed, tpoe_field** u, tpoe_field** p, tpoe_field** f);
TPOE_API size_t tpoe_recipe_count(void);
TPOE_API const char* tpoe_recipe_name(size_t index);

/* Full solve. `norms` may be NULL (report every admissible norm).
 * precondition_tol <= 0 selects the default. */
TPOE_API tpoe_status tpoe_solve_full(const tpoe_field* f, const tpoe_params* params, double precondition_tol,
                                     const tpoe_norm_tag* norms, size_t norm_count, tpoe_solution** out);
TPOE_API void tpoe_solution_destroy(tpoe_solution* solution);
TPOE_API double tpoe_solution_residual(const tpoe_solution* solution);
/* which: 'u', 'v', 'w' or 'p'. Returns a new field owned by the caller. */
TPOE_API tpoe_status tpoe_solution_field(const tpoe_solution* solution, char which, tpoe_field** out);
TPOE_API size_t tpoe_solution_norm_count(const tpoe_solution* solution);
TPOE_API tpoe_status tpoe_solution_norm_at(const tpoe_solution* solution, size_t index, const char** name,
                                           double* value);
/* Borrowed JSON text valid until the solution is destroyed. */
TPOE_API const char* tpoe_solution_summary_json(const tpoe_solution* solution);
TPOE_API tpoe_status tpoe_solution_write(const tpoe_solution* solution, const char* directory);

TPOE_API tpoe_status tpoe_roundtrip_verify(const tpoe_domain* domain, const tpoe_params* params, int ensemble_size,
                                           uint64_t seed, double* worst_error);
TPOE_API tpoe_status tpoe_transference_check(const tpoe_domain* domain, const tpoe_params* params,
                                             double* max_deviation);

/* `grid` may be NULL for the default scan grid. */
TPOE_API tpoe_status tpoe_marcinkiewicz_scan(int n, const tpoe_params* params, const tpoe_scan_grid* grid,
                                             tpoe_marcinkiewicz** out);
TPOE_API void tpoe_marcinkiewicz_destroy(tpoe_marcinkiewicz* report);
TPOE_API double tpoe_marcinkiewicz_overall(const tpoe_marcinkiewicz* report);
TPOE_API size_t tpoe_marcinkiewicz_points(const tpoe_marcinkiewicz* report);
/* Per-eps supremum; bit j < n of eps is xi_{j+1}, bit n is eta. */
TPOE_API tpoe_status tpoe_marcinkiewicz_sup(const tpoe_marcinkiewicz* report, unsigned eps, double* out);
TPOE_API tpoe_status tpoe_marcinkiewicz_write(const tpoe_marcinkiewicz* report, const char* csv_path,
                                              const char* json_path);

TPOE_API tpoe_status tpoe_constant_sweep(const tpoe_domain* domain, double q, const double* lambdas,
                                         size_t lambda_count, const double* periods, size_t period_count,
                                         int ensemble_size, uint64_t seed, const tpoe_scan_grid* grid,
                                         tpoe_sweep** out);
TPOE_API void tpoe_sweep_destroy(tpoe_sweep* sweep);
TPOE_API size_t tpoe_sweep_record_count(const tpoe_sweep* sweep);
TPOE_API tpoe_status tpoe_sweep_write(const tpoe_sweep* sweep, const char* csv_path, const char* fits_json_path);

/* Resolutions are (Ns[i], Nts[i]) pairs. */
TPOE_API tpoe_status tpoe_convergence_study(const char* recipe, const tpoe_domain* base, const tpoe_params* params,
                                            const int* Ns, const int* Nts, size_t count, uint64_t seed,
                                            tpoe_convergence** out);
TPOE_API void tpoe_convergence_destroy(tpoe_convergence* study);
TPOE_API size_t tpoe_convergence_row_count(const tpoe_convergence* study);
TPOE_API tpoe_status tpoe_convergence_row_at(const tpoe_convergence* study, size_t index, tpoe_convergence_row* row);
TPOE_API tpoe_status tpoe_convergence_write(const tpoe_convergence* study, const char* csv_path);

#ifdef __cplusplus
}
#endif

#endif /* TPOE_TPOE_H */
