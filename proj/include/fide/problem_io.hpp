#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fide/expr.hpp"
#include "fide/galerkin.hpp"

namespace fide::io {

// Flat JSON problem description. Expression members are kept as parsed trees
// alongside their source text.
struct ProblemFile {
  std::string name;
  double q = 0.5;
  double lambda = 0.0;
  std::string p_source, f_source, kernel_source;
  std::optional<std::string> exact_source;
  double d = 0.0;

  expr::Expr p, f, kernel;
  std::optional<expr::Expr> exact;
};

/// Parses and validates a problem document. Unknown members, missing members,
/// wrong types, q outside (0, 1) and expression errors all throw.
ProblemFile parse_problem(std::string_view json_text);

ProblemFile read_problem_file(const std::string& path);

/// Compiles the expression trees into evaluators.
Problem to_problem(const ProblemFile& file);

inline Problem load_problem(const std::string& path) { return to_problem(read_problem_file(path)); }

/// Solution document: name, q, lambda, N, coefficients, residual,
/// condition_estimate, and when grid > 0 a sample {x, u} at x = k/grid.
std::string solution_json(const std::string& name, double lambda, const SpectralSolution& sol,
                          std::size_t grid = 0);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Self-tests on a loaded problem: transformed data at sample points, an
/// N = 2 assembly and solve, basis/quadrature consistency.
std::vector<CheckResult> run_checks(const Problem& problem);

void write_text_file(const std::string& path, std::string_view contents);

}  // namespace fide::io
