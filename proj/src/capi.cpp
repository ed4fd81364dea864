#include "fide/fide.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "fide/analysis.hpp"
#include "fide/error.hpp"
#include "fide/galerkin.hpp"
#include "fide/problem_io.hpp"
#include "fide/quadrature.hpp"

struct fide_problem {
  fide::io::ProblemFile file;
  fide::Problem problem;
};

struct fide_solution {
  fide::SpectralSolution solution;
};

struct fide_report {
  fide::analysis::ConvergenceReport report;
};

namespace {

thread_local std::string last_error;

fide_status to_status(fide::ErrorCode code) {
  using fide::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return FIDE_E_INVALID_ARGUMENT;
    case ErrorCode::Lexical: return FIDE_E_LEXICAL;
    case ErrorCode::Syntax: return FIDE_E_SYNTAX;
    case ErrorCode::UnknownFunction: return FIDE_E_UNKNOWN_FUNCTION;
    case ErrorCode::UnknownVariable: return FIDE_E_UNKNOWN_VARIABLE;
    case ErrorCode::Domain: return FIDE_E_DOMAIN;
    case ErrorCode::Pole: return FIDE_E_POLE;
    case ErrorCode::Overflow: return FIDE_E_OVERFLOW;
    case ErrorCode::ConvergenceFailure: return FIDE_E_CONVERGENCE;
    case ErrorCode::IndexOutOfRange: return FIDE_E_INDEX;
    case ErrorCode::Precondition: return FIDE_E_PRECONDITION;
    case ErrorCode::NonFinite: return FIDE_E_NON_FINITE;
    case ErrorCode::SingularMatrix: return FIDE_E_SINGULAR;
    case ErrorCode::Io: return FIDE_E_IO;
    case ErrorCode::JsonSyntax: return FIDE_E_JSON;
    case ErrorCode::Schema: return FIDE_E_SCHEMA;
    case ErrorCode::QRange: return FIDE_E_Q_RANGE;
    case ErrorCode::MissingExact: return FIDE_E_MISSING_EXACT;
    case ErrorCode::InsufficientRows: return FIDE_E_INSUFFICIENT_ROWS;
  }
  return FIDE_E_INTERNAL;
}

fide_status fail(fide_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs body, translating exceptions into status codes.
template <typename F>
fide_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const fide::Error& e) {
    return fail(to_status(e.code()), std::string(fide::to_string(e.code())) + ": " + e.what());
  } catch (const std::bad_alloc&) {
    return fail(FIDE_E_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FIDE_E_INTERNAL, e.what());
  } catch (...) {
    return fail(FIDE_E_INTERNAL, "unknown failure");
  }
}

fide_status null_argument(const char* what) {
  return fail(FIDE_E_INVALID_ARGUMENT, std::string("null argument: ") + what);
}

}  // namespace

extern "C" {

const char* fide_last_error(void) { return last_error.c_str(); }

const char* fide_status_string(fide_status status) {
  switch (status) {
    case FIDE_OK: return "ok";
    case FIDE_E_BUFFER_TOO_SMALL: return "buffer too small";
    case FIDE_E_INTERNAL: return "internal error";
    default: break;
  }
  for (int c = 0; c <= static_cast<int>(fide::ErrorCode::InsufficientRows); ++c) {
    const auto code = static_cast<fide::ErrorCode>(c);
    if (to_status(code) == status) return fide::to_string(code).data();
  }
  return "unknown status";
}

fide_status fide_problem_parse(const char* json_text, fide_problem** out) {
  if (!json_text) return null_argument("json_text");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto h = std::make_unique<fide_problem>();
    h->file = fide::io::parse_problem(json_text);
    h->problem = fide::io::to_problem(h->file);
    *out = h.release();
    return FIDE_OK;
  });
}

fide_status fide_problem_load(const char* path, fide_problem** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto h = std::make_unique<fide_problem>();
    h->file = fide::io::read_problem_file(path);
    h->problem = fide::io::to_problem(h->file);
    *out = h.release();
    return FIDE_OK;
  });
}

void fide_problem_free(fide_problem* problem) { delete problem; }

const char* fide_problem_name(const fide_problem* problem) { return problem ? problem->file.name.c_str() : ""; }

double fide_problem_q(const fide_problem* problem) { return problem ? problem->file.q : 0.0; }

double fide_problem_lambda(const fide_problem* problem) { return problem ? problem->file.lambda : 0.0; }

int fide_problem_has_exact(const fide_problem* problem) {
  return problem && problem->problem.exact.has_value() ? 1 : 0;
}

fide_status fide_problem_eval_exact(const fide_problem* problem, double x, double* out) {
  if (!problem) return null_argument("problem");
  if (!out) return null_argument("out");
  return guarded([&] {
    if (!problem->problem.exact) throw fide::Error(fide::ErrorCode::MissingExact, "problem has no exact solution");
    *out = (*problem->problem.exact)(x);
    return FIDE_OK;
  });
}

fide_status fide_solve(const fide_problem* problem, int order, fide_solution** out) {
  if (!problem) return null_argument("problem");
  if (!out) return null_argument("out");
  *out = nullptr;
  if (order < 1) return fail(FIDE_E_INVALID_ARGUMENT, "order must be >= 1, got " + std::to_string(order));
  return guarded([&] {
    auto h = std::make_unique<fide_solution>();
    h->solution = fide::solve(problem->problem, static_cast<std::size_t>(order));
    *out = h.release();
    return FIDE_OK;
  });
}

void fide_solution_free(fide_solution* solution) { delete solution; }

int fide_solution_order(const fide_solution* solution) {
  return solution ? static_cast<int>(solution->solution.order) : 0;
}

fide_status fide_solution_coefficients(const fide_solution* solution, double* buffer, size_t capacity,
                                       size_t* count) {
  if (!solution) return null_argument("solution");
  const auto& a = solution->solution.coefficients;
  if (count) *count = a.size();
  if (!buffer) return capacity == 0 ? FIDE_OK : null_argument("buffer");
  if (capacity < a.size()) {
    return fail(FIDE_E_BUFFER_TOO_SMALL, "need room for " + std::to_string(a.size()) + " coefficients");
  }
  std::copy(a.begin(), a.end(), buffer);
  return FIDE_OK;
}

fide_status fide_solution_diagnostics(const fide_solution* solution, double* residual, double* condition_estimate) {
  if (!solution) return null_argument("solution");
  if (residual) *residual = solution->solution.diagnostics.relative_residual;
  if (condition_estimate) *condition_estimate = solution->solution.diagnostics.condition_estimate;
  return FIDE_OK;
}

fide_status fide_solution_eval(const fide_solution* solution, double x, double* out) {
  if (!solution) return null_argument("solution");
  if (!out) return null_argument("out");
  *out = fide::eval_solution(solution->solution, x);
  return FIDE_OK;
}

fide_status fide_solution_l2_error(const fide_solution* solution, const fide_problem* problem, int quad_points,
                                   double* out) {
  if (!solution) return null_argument("solution");
  if (!problem) return null_argument("problem");
  if (!out) return null_argument("out");
  return guarded([&] {
    if (!problem->problem.exact) throw fide::Error(fide::ErrorCode::MissingExact, "problem has no exact solution");
    if (quad_points < 2) throw fide::Error(fide::ErrorCode::InvalidArgument, "quad_points must be >= 2");
    *out = fide::analysis::l2_error(solution->solution, *problem->problem.exact,
                                    static_cast<std::size_t>(quad_points));
    return FIDE_OK;
  });
}

fide_status fide_solution_write_json(const fide_solution* solution, const fide_problem* problem, int grid_points,
                                     const char* path) {
  if (!solution) return null_argument("solution");
  if (!problem) return null_argument("problem");
  if (!path) return null_argument("path");
  if (grid_points < 0) return fail(FIDE_E_INVALID_ARGUMENT, "grid_points must be >= 0");
  return guarded([&] {
    fide::io::write_text_file(path, fide::io::solution_json(problem->file.name, problem->file.lambda,
                                                            solution->solution,
                                                            static_cast<std::size_t>(grid_points)));
    return FIDE_OK;
  });
}

fide_status fide_converge(const fide_problem* problem, const int* orders, size_t count, int error_quad_points,
                          fide_report** out) {
  if (!problem) return null_argument("problem");
  if (!out) return null_argument("out");
  if (count > 0 && !orders) return null_argument("orders");
  *out = nullptr;
  if (error_quad_points == 0) error_quad_points = static_cast<int>(fide::analysis::kDefaultErrorQuadPoints);
  if (error_quad_points < 2) return fail(FIDE_E_INVALID_ARGUMENT, "error_quad_points must be 0 or >= 2");
  std::vector<std::size_t> ns;
  for (size_t i = 0; i < count; ++i) {
    if (orders[i] < 1) return fail(FIDE_E_INVALID_ARGUMENT, "orders must be >= 1");
    ns.push_back(static_cast<std::size_t>(orders[i]));
  }
  return guarded([&] {
    auto h = std::make_unique<fide_report>();
    h->report = fide::analysis::convergence_sweep(problem->problem, ns, static_cast<std::size_t>(error_quad_points));
    *out = h.release();
    return FIDE_OK;
  });
}

void fide_report_free(fide_report* report) { delete report; }

size_t fide_report_rows(const fide_report* report) { return report ? report->report.rows.size() : 0; }

fide_status fide_report_row(const fide_report* report, size_t index, int* order, double* l2_error, double* linf_error,
                            double* condition_estimate, double* elapsed_ms) {
  if (!report) return null_argument("report");
  if (index >= report->report.rows.size()) {
    return fail(FIDE_E_INDEX, "row " + std::to_string(index) + " out of range");
  }
  const auto& row = report->report.rows[index];
  if (order) *order = static_cast<int>(row.order);
  if (l2_error) *l2_error = row.l2_error;
  if (linf_error) *linf_error = row.linf_error;
  if (condition_estimate) *condition_estimate = row.condition_estimate;
  if (elapsed_ms) *elapsed_ms = row.elapsed_ms;
  return FIDE_OK;
}

fide_status fide_report_decay(const fide_report* report, double* slope, double* r_squared) {
  if (!report) return null_argument("report");
  return guarded([&] {
    const auto fit = fide::analysis::fitted_decay_rate(report->report);
    if (slope) *slope = fit.slope;
    if (r_squared) *r_squared = fit.r_squared;
    return FIDE_OK;
  });
}

fide_status fide_report_write_csv(const fide_report* report, const char* path) {
  if (!report) return null_argument("report");
  if (!path) return null_argument("path");
  return guarded([&] {
    fide::io::write_text_file(path, fide::analysis::to_csv(report->report));
    return FIDE_OK;
  });
}

fide_status fide_report_write_json(const fide_report* report, const char* path) {
  if (!report) return null_argument("report");
  if (!path) return null_argument("path");
  return guarded([&] {
    fide::io::write_text_file(path, fide::analysis::to_json(report->report));
    return FIDE_OK;
  });
}

fide_status fide_report_write_plot(const fide_report* report, const char* path) {
  if (!report) return null_argument("report");
  if (!path) return null_argument("path");
  return guarded([&] {
    fide::io::write_text_file(path, fide::analysis::to_plot_data(report->report));
    return FIDE_OK;
  });
}

fide_status fide_rule(int n, double* nodes, double* weights) {
  if (!nodes) return null_argument("nodes");
  if (!weights) return null_argument("weights");
  if (n < 1) return fail(FIDE_E_INVALID_ARGUMENT, "rule needs at least one point");
  return guarded([&] {
    const fide::QuadratureRule& rule = fide::legendre_gauss(static_cast<std::size_t>(n));
    std::copy(rule.nodes.begin(), rule.nodes.end(), nodes);
    std::copy(rule.weights.begin(), rule.weights.end(), weights);
    return FIDE_OK;
  });
}

fide_status fide_check(const fide_problem* problem, fide_check_callback callback, void* user, int* all_passed) {
  if (!problem) return null_argument("problem");
  return guarded([&] {
    const auto results = fide::io::run_checks(problem->problem);
    bool ok = true;
    for (const auto& r : results) {
      ok = ok && r.passed;
      if (callback) callback(r.name.c_str(), r.passed ? 1 : 0, r.detail.c_str(), user);
    }
    if (all_passed) *all_passed = ok ? 1 : 0;
    return FIDE_OK;
  });
}

}  // extern "C"
