#include "fide/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "fide/error.hpp"

namespace fide {
namespace {

constexpr double kNewtonTolerance = 1e-15;
constexpr int kMaxNewtonIterations = 50;

struct LegendreValue {
  double p;   // P_n(s)
  double dp;  // P_n'(s)
};

LegendreValue legendre(std::size_t n, double s) {
  double p0 = 1.0;
  double p1 = s;
  for (std::size_t k = 2; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    const double p2 = ((2.0 * kk - 1.0) * s * p1 - (kk - 1.0) * p0) / kk;
    p0 = p1;
    p1 = p2;
  }
  const double nn = static_cast<double>(n);
  const double p = n == 0 ? 1.0 : p1;
  const double pm1 = n == 0 ? 0.0 : p0;
  return {p, nn * (s * p - pm1) / (s * s - 1.0)};
}

}  // namespace

QuadratureRule build_legendre_gauss(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "quadrature rule needs at least one point");

  // Roots on [-1, 1], descending from the largest.
  std::vector<double> roots(n);
  std::vector<double> w(n);
  const double nn = static_cast<double>(n);
  for (std::size_t i = 1; i <= (n + 1) / 2; ++i) {
    double s = std::cos(std::numbers::pi * (4.0 * static_cast<double>(i) - 1.0) / (4.0 * nn + 2.0));
    bool converged = false;
    for (int it = 0; it < kMaxNewtonIterations; ++it) {
      const LegendreValue lv = legendre(n, s);
      const double step = lv.p / lv.dp;
      s -= step;
      if (std::abs(step) <= kNewtonTolerance) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw Error(ErrorCode::ConvergenceFailure,
                  "Newton iteration for Legendre root " + std::to_string(i) + " of " + std::to_string(n) +
                      " did not converge");
    }
    if (n % 2 == 1 && i == (n + 1) / 2) s = 0.0;
    const double dp = legendre(n, s).dp;
    roots[i - 1] = s;
    w[i - 1] = 2.0 / ((1.0 - s * s) * dp * dp);
  }

  // Affine map to [0, 1]; mirror pairs are set symmetrically.
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    const double s = roots[i];
    const double upper = 0.5 * (1.0 + s);
    const double lower = 0.5 * (1.0 - s);
    const double weight = 0.5 * w[i];
    rule.nodes[n - 1 - i] = upper;
    rule.nodes[i] = lower;
    rule.weights[n - 1 - i] = weight;
    rule.weights[i] = weight;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.5;
  return rule;
}

const QuadratureRule& legendre_gauss(std::size_t n) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<const QuadratureRule>> cache;

  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::make_unique<const QuadratureRule>(build_legendre_gauss(n))).first;
  }
  return *it->second;
}

}  // namespace fide
