/*
 * C interface to the fractional integro-differential equation solver.
 *
 * Objects are opaque handles released with the matching *_free function.
 * Every fallible call returns a fide_status; on failure the message is
 * available from fide_last_error() on the calling thread until the next call.
 */
#ifndef FIDE_FIDE_H
#define FIDE_FIDE_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(FIDE_BUILDING_LIBRARY)
#    define FIDE_API __declspec(dllexport)
#  else
#    define FIDE_API __declspec(dllimport)
#  endif
#else
#  define FIDE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fide_status {
  FIDE_OK = 0,
  FIDE_E_INVALID_ARGUMENT = 1,
  FIDE_E_LEXICAL = 2,
  FIDE_E_SYNTAX = 3,
  FIDE_E_UNKNOWN_FUNCTION = 4,
  FIDE_E_UNKNOWN_VARIABLE = 5,
  FIDE_E_DOMAIN = 6,
  FIDE_E_POLE = 7,
  FIDE_E_OVERFLOW = 8,
  FIDE_E_CONVERGENCE = 9,
  FIDE_E_INDEX = 10,
  FIDE_E_PRECONDITION = 11,
  FIDE_E_NON_FINITE = 12,
  FIDE_E_SINGULAR = 13,
  FIDE_E_IO = 14,
  FIDE_E_JSON = 15,
  FIDE_E_SCHEMA = 16,
  FIDE_E_Q_RANGE = 17,
  FIDE_E_MISSING_EXACT = 18,
  FIDE_E_INSUFFICIENT_ROWS = 19,
  FIDE_E_BUFFER_TOO_SMALL = 20,
  FIDE_E_INTERNAL = 99
} fide_status;

typedef struct fide_problem fide_problem;
typedef struct fide_solution fide_solution;
typedef struct fide_report fide_report;

FIDE_API const char* fide_last_error(void);
FIDE_API const char* fide_status_string(fide_status status);

/* Problems */
FIDE_API fide_status fide_problem_load(const char* path, fide_problem** out);
FIDE_API fide_status fide_problem_parse(const char* json_text, fide_problem** out);
FIDE_API void fide_problem_free(fide_problem* problem);
FIDE_API const char* fide_problem_name(const fide_problem* problem);
FIDE_API double fide_problem_q(const fide_problem* problem);
FIDE_API double fide_problem_lambda(const fide_problem* problem);
FIDE_API int fide_problem_has_exact(const fide_problem* problem);
FIDE_API fide_status fide_problem_eval_exact(const fide_problem* problem, double x, double* out);

/* Solving */
FIDE_API fide_status fide_solve(const fide_problem* problem, int order, fide_solution** out);
FIDE_API void fide_solution_free(fide_solution* solution);
FIDE_API int fide_solution_order(const fide_solution* solution);
/* Copies the coefficients when capacity allows; *count receives the order.
   A NULL buffer with capacity 0 only queries the count. */
FIDE_API fide_status fide_solution_coefficients(const fide_solution* solution, double* buffer, size_t capacity,
                                                size_t* count);
FIDE_API fide_status fide_solution_diagnostics(const fide_solution* solution, double* residual,
                                               double* condition_estimate);
FIDE_API fide_status fide_solution_eval(const fide_solution* solution, double x, double* out);
FIDE_API fide_status fide_solution_l2_error(const fide_solution* solution, const fide_problem* problem,
                                            int quad_points, double* out);
/* Solution JSON document; grid_points > 0 adds an equispaced sample on (0, 1]. */
FIDE_API fide_status fide_solution_write_json(const fide_solution* solution, const fide_problem* problem,
                                              int grid_points, const char* path);

/* Convergence studies; error_quad_points = 0 selects the default 200-point rule. */
FIDE_API fide_status fide_converge(const fide_problem* problem, const int* orders, size_t count,
                                   int error_quad_points, fide_report** out);
FIDE_API void fide_report_free(fide_report* report);
FIDE_API size_t fide_report_rows(const fide_report* report);
FIDE_API fide_status fide_report_row(const fide_report* report, size_t index, int* order, double* l2_error,
                                     double* linf_error, double* condition_estimate, double* elapsed_ms);
FIDE_API fide_status fide_report_decay(const fide_report* report, double* slope, double* r_squared);
FIDE_API fide_status fide_report_write_csv(const fide_report* report, const char* path);
FIDE_API fide_status fide_report_write_json(const fide_report* report, const char* path);
FIDE_API fide_status fide_report_write_plot(const fide_report* report, const char* path);

/* Quadrature: fills n nodes and n weights of the Gauss-Legendre rule on [0, 1]. */
FIDE_API fide_status fide_rule(int n, double* nodes, double* weights);

/* Self-tests on a problem's data; the callback receives one line per check. */
typedef void (*fide_check_callback)(const char* name, int passed, const char* detail, void* user);
FIDE_API fide_status fide_check(const fide_problem* problem, fide_check_callback callback, void* user,
                                int* all_passed);

#ifdef __cplusplus
}
#endif

#endif /* FIDE_FIDE_H */
