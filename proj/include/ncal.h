/*
 * ncal - augmented Lagrangian solver for nonconvex composite optimization
 * Copyright 2026 ncal Contributors
 * Licensed under Apache 2.0
 *
 * C interface to the solver core. Handles are opaque; every function that can
 * fail returns an ncal_status and, when an error buffer is supplied, writes a
 * human-readable message into it. Strings returned through char** are owned
 * by the caller and must be released with ncal_string_free(); strings
 * returned as const char* stay owned by their handle.
 */

#ifndef NCAL_H
#define NCAL_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ncal_status {
  NCAL_OK = 0,
  NCAL_ERR_INVALID_ARGUMENT = 1,
  NCAL_ERR_CONFIG = 2,
  NCAL_ERR_DIMENSION = 3,
  NCAL_ERR_DOMAIN = 4,
  NCAL_ERR_PROX_UNBOUNDED = 5,
  NCAL_ERR_MAX_INNER_ITERATIONS = 6,
  NCAL_ERR_UNBOUNDED_BELOW = 7,
  NCAL_ERR_UNSUPPORTED = 8,
  NCAL_ERR_INSUFFICIENT_HISTORY = 9,
  NCAL_ERR_INTERNAL = 10
} ncal_status;

const char* ncal_status_name(ncal_status status);

typedef struct ncal_problem ncal_problem;
typedef struct ncal_report ncal_report;

/* ---- problem lifecycle ---------------------------------------------- */

/* instance_json: {"name": "<registry tag>"} or an inline spec; see the
 * README for the schema. */
ncal_status ncal_problem_create(const char* instance_json, ncal_problem** out,
                                char* err, size_t err_len);
void ncal_problem_free(ncal_problem* p);

int ncal_problem_dim_n(const ncal_problem* p);
int ncal_problem_dim_m(const ncal_problem* p);

/* Initial point and multiplier of the instance; x0 must hold n doubles and
 * y0 m doubles. Either pointer may be NULL to skip. */
ncal_status ncal_problem_initial_point(const ncal_problem* p, double* x0, double* y0);

/* ---- evaluation ------------------------------------------------------ */

/* phi(x) = f(x) + g(c(x)). *finite is 0 when phi(x) = +inf, in which case
 * *value holds dist(c(x), dom g) instead. */
ncal_status ncal_eval_phi(const ncal_problem* p, const double* x, size_t n,
                          double* value, int* finite);

/* Theta(x, z, y); z must lie in dom g. */
ncal_status ncal_residual_theta(const ncal_problem* p, const double* x, size_t n,
                                const double* z, size_t mz, const double* y, size_t my,
                                double* theta);

/* ---- solve ----------------------------------------------------------- */

/* Called once per outer iteration with the record rendered as one JSON line
 * (no trailing newline). */
typedef void (*ncal_record_callback)(const char* record_json, void* user);

/* solver_json: {"outer": {...}, "inner": {...}} (all keys optional; see the
 * README). The report must be released with ncal_report_free(). */
ncal_status ncal_solve(const ncal_problem* p, const char* solver_json,
                       ncal_record_callback callback, void* user, ncal_report** out,
                       char* err, size_t err_len);

/* 0 stationary, 2 max-outer, 3 unbounded-below, 4 shrunk-penalty-floor */
int ncal_report_exit_code(const ncal_report* r);
const char* ncal_report_status_name(const ncal_report* r);
size_t ncal_report_num_records(const ncal_report* r);
const char* ncal_report_record_json(const ncal_report* r, size_t k);
const char* ncal_report_summary_json(const ncal_report* r);
void ncal_report_free(ncal_report* r);

/* ---- diagnostics and oracles ----------------------------------------- */

/* M-stationarity verdict, residual, index sets and (for l0 instances) the
 * sparse error-bound condition flags, rendered as JSON. */
ncal_status ncal_diagnose(const ncal_problem* p, const double* x, size_t n,
                          const double* y, size_t m, double tol, char** json_out,
                          char* err, size_t err_len);

/* Brute-force prox-vs-grid check of the instance regularizer plus the
 * Moreau/Fermat consistency checks; `cases` random draws with the given
 * seed. The JSON report lists every mismatch. */
ncal_status ncal_oracle_check(const ncal_problem* p, unsigned long long seed,
                              int cases, char** json_out, char* err, size_t err_len);

void ncal_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* NCAL_H */
