#pragma once

// Discrete Galerkin solver for
//   D^q u(x) = p(x) u(x) + f(x) + lambda * int_0^x K(x,t) u(t) dt,  u(0) = d,
// with 0 < q < 1. The problem is mapped to v = x^q, where the solution is
// smooth, and expanded in trial functions G_i^{0,-1}(v) that vanish at v = 0.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fide/fracops.hpp"
#include "fide/linalg.hpp"
#include "fide/quadrature.hpp"

namespace fide {

using UnaryFunction = std::function<double(double)>;
using BinaryFunction = std::function<double(double, double)>;

struct Problem {
  std::string name;
  double q = 0.5;
  double lambda = 0.0;
  UnaryFunction p;
  UnaryFunction f;
  BinaryFunction kernel;  // K(x, t)
  double d = 0.0;         // u(0)
  std::optional<UnaryFunction> exact;
};

// Problem data in the regularized variable v = x^q:
//   pbar(v) = p(v^{1/q}),  fbar(v) = f(v^{1/q}),
//   ktilde(v, w) = w^{1/q-1}/q * K(v^{1/q}, w^{1/q}).
// Only ever evaluated at interior quadrature points.
struct TransformedProblem {
  double q = 0.5;
  double lambda = 0.0;
  UnaryFunction pbar;
  UnaryFunction fbar;
  BinaryFunction ktilde;
};

struct GalerkinSystem {
  std::size_t order = 0;
  DenseMatrix matrix;
  std::vector<double> rhs;
  double q = 0.5;
  double lambda = 0.0;
  std::size_t rule_points = 0;
};

struct SpectralSolution {
  double q = 0.5;
  std::size_t order = 0;
  std::vector<double> coefficients;  // a_1..a_N
  double initial_value = 0.0;        // d; zero for homogeneous problems
  SolveDiagnostics diagnostics;
  bool ill_conditioned_basis = false;
};

inline constexpr std::size_t kReductionRulePoints = 64;

/// Shifts u by u(0) = d. The new forcing is f + d (p + lambda Q) with
/// Q(x) = x sum_k K(x, x theta_k) delta_k on a fixed 64-point rule.
Problem reduce_nonhomogeneous(const Problem& problem);

/// Requires d == 0; throws Precondition otherwise.
TransformedProblem transform_problem(const Problem& problem);

/// v sum_k ktilde(v, v theta_k) G_j(v theta_k) delta_k.
double kernel_action(const TransformedProblem& tp, const QuadratureRule& rule, std::size_t j, double v);

/// Assembles the N x N system on the (N+1)-point Legendre rule. Row i is
/// tested against J_{i-1}^{0,1}; column j carries trial function G_j.
/// A nonzero rule_points substitutes a different rule size.
GalerkinSystem assemble(const TransformedProblem& tp, std::size_t order, const fracops::PsiTable& psi,
                        std::size_t rule_points = 0);

/// A a - b, row by row.
std::vector<double> row_residuals(const GalerkinSystem& system, const std::vector<double>& coefficients);

SpectralSolution solve_system(const GalerkinSystem& system);

/// reduce -> transform -> Psi table -> assemble -> LU.
SpectralSolution solve(const Problem& problem, std::size_t order);

/// ubar_N(v) = sum_i a_i G_i^{0,-1}(v).
double eval_transformed(const SpectralSolution& sol, double v);

/// u_N(x) = d + ubar_N(x^q).
double eval_solution(const SpectralSolution& sol, double x);

}  // namespace fide
