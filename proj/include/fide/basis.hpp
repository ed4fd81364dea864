#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fide::basis {

// Coefficients c_0..c_m of sum_k c_k v^k.
struct MonomialCoeffs {
  std::vector<double> coeffs;
  // Set when the largest |c_k| exceeds 1e15; cancellation in doubles then
  // limits what any monomial evaluation can achieve.
  bool ill_conditioned = false;

  std::size_t degree() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

inline constexpr double kConditioningThreshold = 1e15;

/// Shifted Jacobi polynomial J_n^{alpha,beta}(v) = P_n^{(alpha,beta)}(2v - 1),
/// orthogonal on [0, 1] for the weight (2-2v)^alpha (2v)^beta.
double jacobi_eval(std::size_t n, double alpha, double beta, double v);

/// Trial function G_i^{0,-1}(v) = 2v J_{i-1}^{0,1}(v), i >= 1. Vanishes at 0.
double gjp_trial_eval(std::size_t i, double v);

/// Test function G_{i-1}^{0,1}(v) = J_{i-1}^{0,1}(v), i >= 1.
double gjp_test_eval(std::size_t i, double v);

/// Fills out[i-1] = J_{i-1}^{0,1}(v) for i = 1..out.size() in one recurrence pass.
void gjp_test_all(double v, std::span<double> out);

/// Fills out[i-1] = G_i^{0,-1}(v) for i = 1..out.size() in one recurrence pass.
void gjp_trial_all(double v, std::span<double> out);

/// Monomial expansion of G_i^{0,-1}: the coefficient of v^{k+1} is
/// 2 (-1)^{i-1-k} (i+k)! / ((k+1)! (i-1-k)! k!), k = 0..i-1.
MonomialCoeffs gjp_trial_monomials(std::size_t i);

/// Signed coefficient of v^{k+1} in G_i^{0,-1}, 0 <= k < i. Exact while it
/// fits in 53 bits, otherwise accumulated in log space.
double gjp_trial_coefficient(std::size_t i, std::size_t k);

/// Horner evaluation with TwoSum/TwoProduct error compensation.
double horner(std::span<const double> coeffs, double v);

}  // namespace fide::basis
