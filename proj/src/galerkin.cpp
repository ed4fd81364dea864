#include "fide/galerkin.hpp"

#include <cmath>
#include <string>

#include "fide/basis.hpp"
#include "fide/error.hpp"

namespace fide {
namespace {

void require_finite(double value, std::size_t i, std::size_t j, const char* term) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::NonFinite, "non-finite system entry (" + std::to_string(i) + ", " + std::to_string(j) +
                                          ") from " + term);
  }
}

}  // namespace

Problem reduce_nonhomogeneous(const Problem& problem) {
  if (problem.d == 0.0) return problem;

  Problem out = problem;
  const double d = problem.d;
  const double lambda = problem.lambda;
  const QuadratureRule& rule = legendre_gauss(kReductionRulePoints);
  out.f = [f = problem.f, p = problem.p, kernel = problem.kernel, d, lambda, &rule](double x) {
    double q_int = 0.0;
    for (std::size_t k = 0; k < rule.size(); ++k) q_int += kernel(x, x * rule.nodes[k]) * rule.weights[k];
    return f(x) + d * (p(x) + lambda * x * q_int);
  };
  if (problem.exact) {
    out.exact = [exact = *problem.exact, d](double x) { return exact(x) - d; };
  }
  out.d = 0.0;
  return out;
}

TransformedProblem transform_problem(const Problem& problem) {
  if (problem.d != 0.0) {
    throw Error(ErrorCode::Precondition, "transform_problem needs a homogeneous problem; reduce u(0) = " +
                                             std::to_string(problem.d) + " first");
  }
  const double q = problem.q;
  const double inv = 1.0 / q;
  TransformedProblem tp;
  tp.q = q;
  tp.lambda = problem.lambda;
  tp.pbar = [p = problem.p, inv](double v) { return p(std::pow(v, inv)); };
  tp.fbar = [f = problem.f, inv](double v) { return f(std::pow(v, inv)); };
  tp.ktilde = [kernel = problem.kernel, inv, q](double v, double w) {
    return std::pow(w, inv - 1.0) / q * kernel(std::pow(v, inv), std::pow(w, inv));
  };
  return tp;
}

double kernel_action(const TransformedProblem& tp, const QuadratureRule& rule, std::size_t j, double v) {
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double w = v * rule.nodes[k];
    sum += tp.ktilde(v, w) * basis::gjp_trial_eval(j, w) * rule.weights[k];
  }
  return v * sum;
}

GalerkinSystem assemble(const TransformedProblem& tp, std::size_t order, const fracops::PsiTable& psi,
                        std::size_t rule_points) {
  if (order == 0) throw Error(ErrorCode::InvalidArgument, "Galerkin order must be >= 1");
  if (psi.order() != order || psi.q() != tp.q) {
    throw Error(ErrorCode::InvalidArgument, "Psi table does not match the requested order and q");
  }

  const std::size_t n = order;
  const QuadratureRule& rule = legendre_gauss(rule_points == 0 ? n + 1 : rule_points);
  const std::size_t m = rule.size();

  // Per-node values, indexed [node * n + basis].
  std::vector<double> test(m * n), trial(m * n), psi_val(m * n), kernel_val(m * n, 0.0);
  std::vector<double> pbar(m), fbar(m);
  std::vector<double> inner_trial(n);
  for (std::size_t a = 0; a < m; ++a) {
    const double v = rule.nodes[a];
    basis::gjp_test_all(v, std::span(test).subspan(a * n, n));
    basis::gjp_trial_all(v, std::span(trial).subspan(a * n, n));
    for (std::size_t j = 0; j < n; ++j) psi_val[a * n + j] = psi.eval(j + 1, v);
    pbar[a] = tp.pbar(v);
    fbar[a] = tp.fbar(v);

    // Kernel action at v for every trial function: the hot loop.
    double* ka = &kernel_val[a * n];
    for (std::size_t k = 0; k < m; ++k) {
      const double w = v * rule.nodes[k];
      const double kw = tp.ktilde(v, w) * rule.weights[k];
      basis::gjp_trial_all(w, inner_trial);
      for (std::size_t j = 0; j < n; ++j) ka[j] += kw * inner_trial[j];
    }
    for (std::size_t j = 0; j < n; ++j) ka[j] *= v;
  }

  GalerkinSystem sys;
  sys.order = n;
  sys.q = tp.q;
  sys.lambda = tp.lambda;
  sys.rule_points = m;
  sys.matrix = DenseMatrix(n, n);
  sys.rhs.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double psi_term = 0.0, p_term = 0.0, k_term = 0.0;
      for (std::size_t a = 0; a < m; ++a) {
        const double wt = rule.weights[a] * test[a * n + i];
        psi_term += wt * psi_val[a * n + j];
        p_term += wt * pbar[a] * trial[a * n + j];
        k_term += wt * kernel_val[a * n + j];
      }
      require_finite(psi_term, i + 1, j + 1, "the fractional-operator term");
      require_finite(p_term, i + 1, j + 1, "p(x) evaluated at the quadrature nodes");
      require_finite(k_term, i + 1, j + 1, "the kernel K(x,t) evaluated at the quadrature nodes");
      sys.matrix(i, j) = psi_term - p_term - tp.lambda * k_term;
    }
    double r = 0.0;
    for (std::size_t a = 0; a < m; ++a) r += rule.weights[a] * fbar[a] * test[a * n + i];
    require_finite(r, i + 1, 0, "f(x) evaluated at the quadrature nodes (right-hand side)");
    sys.rhs[i] = r;
  }
  return sys;
}

std::vector<double> row_residuals(const GalerkinSystem& system, const std::vector<double>& coefficients) {
  std::vector<double> r = multiply(system.matrix, coefficients);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= system.rhs[i];
  return r;
}

SpectralSolution solve_system(const GalerkinSystem& system) {
  LinearSolution ls = lu_solve(system.matrix, system.rhs);
  SpectralSolution sol;
  sol.q = system.q;
  sol.order = system.order;
  sol.coefficients = std::move(ls.x);
  sol.diagnostics = ls.diagnostics;
  return sol;
}

SpectralSolution solve(const Problem& problem, std::size_t order) {
  if (order == 0) throw Error(ErrorCode::InvalidArgument, "Galerkin order must be >= 1");
  const Problem reduced = reduce_nonhomogeneous(problem);
  const TransformedProblem tp = transform_problem(reduced);
  const fracops::PsiTable psi(order, problem.q);
  const GalerkinSystem sys = assemble(tp, order, psi);
  SpectralSolution sol = solve_system(sys);
  sol.initial_value = problem.d;
  sol.ill_conditioned_basis = psi.ill_conditioned();
  return sol;
}

double eval_transformed(const SpectralSolution& sol, double v) {
  if (sol.coefficients.empty()) return 0.0;
  std::vector<double> g(sol.coefficients.size());
  basis::gjp_trial_all(v, g);
  double sum = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) sum += sol.coefficients[i] * g[i];
  return sum;
}

double eval_solution(const SpectralSolution& sol, double x) {
  const double ubar = eval_transformed(sol, std::pow(x, sol.q));
  return sol.initial_value == 0.0 ? ubar : sol.initial_value + ubar;
}

}  // namespace fide
