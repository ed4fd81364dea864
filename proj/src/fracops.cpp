#include "fide/fracops.hpp"

#include <cmath>
#include <string>

#include "fide/basis.hpp"
#include "fide/error.hpp"
#include "fide/specialfn.hpp"

namespace fide::fracops {
namespace {

void require_order(double q) {
  if (!(q > 0.0 && q < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "fractional order must lie in (0, 1), got " + std::to_string(q));
  }
}

double log_mu(std::size_t k, double q) {
  const double kd = static_cast<double>(k);
  return special::log_gamma(q * kd + q + 1.0) - special::log_gamma(q * kd + 1.0);
}

// Gamma(qk+q+1) / Gamma(qk+1); a direct quotient while both are finite.
double mu(std::size_t k, double q) {
  const double kd = static_cast<double>(k);
  const double a = q * kd + q + 1.0;
  if (a < 170.0) return special::gamma(a) / special::gamma(q * kd + 1.0);
  return std::exp(log_mu(k, q));
}

}  // namespace

double caputo_monomial_image(std::size_t k, double q) {
  require_order(q);
  return mu(k, q);
}

PsiTable::PsiTable(std::size_t order, double q) : q_(q) {
  require_order(q);
  if (order == 0) throw Error(ErrorCode::InvalidArgument, "Psi table order must be >= 1");
  rows_.resize(order);
  for (std::size_t j = 1; j <= order; ++j) {
    auto& row = rows_[j - 1];
    row.resize(j);
    for (std::size_t k = 0; k < j; ++k) {
      const double g = basis::gjp_trial_coefficient(j, k);
      double c = g * mu(k, q);
      if (!std::isfinite(c) || std::abs(g) > 1e300) {
        // Combine in log space when the factors overflow separately.
        const double log_g = std::log(std::abs(g));
        c = std::copysign(std::exp(log_g + log_mu(k, q)), g);
      }
      if (!std::isfinite(c)) {
        throw Error(ErrorCode::NonFinite, "Psi coefficient (" + std::to_string(j) + ", " + std::to_string(k) +
                                              ") is not finite");
      }
      row[k] = c;
      if (std::abs(c) > basis::kConditioningThreshold) ill_conditioned_ = true;
    }
  }
}

std::span<const double> PsiTable::row(std::size_t j) const {
  if (j == 0 || j > rows_.size()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "Psi row " + std::to_string(j) + " outside 1.." + std::to_string(rows_.size()));
  }
  return rows_[j - 1];
}

double PsiTable::eval(std::size_t j, double v) const { return compensated_horner(row(j), v); }

double compensated_horner(std::span<const double> coeffs, double v) { return basis::horner(coeffs, v); }

}  // namespace fide::fracops
