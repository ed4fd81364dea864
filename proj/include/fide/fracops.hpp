#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fide::fracops {

/// mu_{k,q} = Gamma(q(k+1)+1) / Gamma(qk+1): the transformed Caputo operator
/// maps v^{k+1} to mu_{k,q} v^k.
double caputo_monomial_image(std::size_t k, double q);

// Monomial coefficients of Psi_j(v), the image of the trial function G_j^{0,-1}
// under the transformed Caputo operator, for j = 1..N. Row j has degree j-1.
class PsiTable {
 public:
  PsiTable(std::size_t order, double q);

  double q() const noexcept { return q_; }
  std::size_t order() const noexcept { return rows_.size(); }
  bool ill_conditioned() const noexcept { return ill_conditioned_; }

  /// Coefficients of Psi_j, j in 1..order().
  std::span<const double> row(std::size_t j) const;

  /// Psi_j(v) by compensated Horner evaluation.
  double eval(std::size_t j, double v) const;

 private:
  double q_;
  std::vector<std::vector<double>> rows_;
  bool ill_conditioned_ = false;
};

inline PsiTable psi_table(std::size_t order, double q) { return PsiTable(order, q); }

inline double psi_eval(const PsiTable& table, std::size_t j, double v) { return table.eval(j, v); }

/// Horner with error-free transformations (TwoSum / FMA TwoProduct).
double compensated_horner(std::span<const double> coeffs, double v);

}  // namespace fide::fracops
