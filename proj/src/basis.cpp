#include "fide/basis.hpp"

#include <cmath>
#include <string>

#include "fide/error.hpp"
#include "fide/specialfn.hpp"

namespace fide::basis {
namespace {

void require_index(std::size_t i, const char* what) {
  if (i == 0) throw Error(ErrorCode::InvalidArgument, std::string(what) + " index must be >= 1");
}

}  // namespace

double jacobi_eval(std::size_t n, double alpha, double beta, double v) {
  if (!(alpha > -1.0) || !(beta > -1.0)) {
    throw Error(ErrorCode::InvalidArgument, "jacobi_eval requires alpha, beta > -1");
  }
  if (n == 0) return 1.0;
  const double s = 2.0 * v - 1.0;
  const double ab = alpha + beta;
  double prev = 1.0;
  double curr = 0.5 * ((ab + 2.0) * s + (alpha - beta));
  for (std::size_t k = 2; k <= n; ++k) {
    const double kk = static_cast<double>(k);
    const double c = 2.0 * kk + ab;
    const double a1 = 2.0 * kk * (kk + ab) * (c - 2.0);
    const double a2 = (c - 1.0) * (c * (c - 2.0) * s + alpha * alpha - beta * beta);
    const double a3 = 2.0 * (kk + alpha - 1.0) * (kk + beta - 1.0) * c;
    const double next = (a2 * curr - a3 * prev) / a1;
    prev = curr;
    curr = next;
  }
  return curr;
}

double gjp_trial_eval(std::size_t i, double v) {
  require_index(i, "trial function");
  return 2.0 * v * jacobi_eval(i - 1, 0.0, 1.0, v);
}

double gjp_test_eval(std::size_t i, double v) {
  require_index(i, "test function");
  return jacobi_eval(i - 1, 0.0, 1.0, v);
}

// Same recurrence as jacobi_eval with alpha = 0, beta = 1.
void gjp_test_all(double v, std::span<double> out) {
  if (out.empty()) return;
  const double s = 2.0 * v - 1.0;
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = 0.5 * (3.0 * s - 1.0);
  for (std::size_t k = 2; k < out.size(); ++k) {
    const double kk = static_cast<double>(k);
    const double c = 2.0 * kk + 1.0;
    const double a1 = 2.0 * kk * (kk + 1.0) * (c - 2.0);
    const double a2 = (c - 1.0) * (c * (c - 2.0) * s - 1.0);
    const double a3 = 2.0 * (kk - 1.0) * kk * c;
    out[k] = (a2 * out[k - 1] - a3 * out[k - 2]) / a1;
  }
}

void gjp_trial_all(double v, std::span<double> out) {
  gjp_test_all(v, out);
  for (double& g : out) g *= 2.0 * v;
}

namespace {

// C(n, r) in 128-bit integers; 0 when any intermediate overflows.
unsigned __int128 binomial(std::size_t n, std::size_t r) {
  if (r > n - r) r = n - r;
  unsigned __int128 b = 1;
  constexpr unsigned __int128 kLimit = static_cast<unsigned __int128>(1) << 100;
  for (std::size_t t = 1; t <= r; ++t) {
    b = b * (n - r + t) / t;  // exact: b * (n-r+t) is divisible by t
    if (b > kLimit) return 0;
  }
  return b;
}

}  // namespace

double gjp_trial_coefficient(std::size_t i, std::size_t k) {
  require_index(i, "trial function");
  if (k >= i) throw Error(ErrorCode::IndexOutOfRange, "coefficient index outside 0..i-1");
  const double sign = (i - 1 - k) % 2 == 0 ? 1.0 : -1.0;
  // (i+k)! / ((k+1)! (i-1-k)! k!) = C(i+k, k+1) C(i-1, k)
  const unsigned __int128 a = binomial(i + k, k + 1);
  const unsigned __int128 b = binomial(i - 1, k);
  constexpr unsigned __int128 kExact = static_cast<unsigned __int128>(1) << 52;
  if (a != 0 && b != 0 && a <= kExact && b <= kExact && a * b <= kExact) {
    return 2.0 * sign * static_cast<double>(a * b);
  }
  const double kd = static_cast<double>(k);
  const double id = static_cast<double>(i);
  const double log_mag = special::log_gamma(id + kd + 1.0) - special::log_gamma(kd + 2.0) -
                         special::log_gamma(id - kd) - special::log_gamma(kd + 1.0);
  return 2.0 * sign * std::exp(log_mag);
}

MonomialCoeffs gjp_trial_monomials(std::size_t i) {
  require_index(i, "trial function");
  MonomialCoeffs m;
  m.coeffs.assign(i + 1, 0.0);
  double largest = 0.0;
  for (std::size_t k = 0; k < i; ++k) {
    const double c = gjp_trial_coefficient(i, k);
    m.coeffs[k + 1] = c;
    largest = std::max(largest, std::abs(c));
  }
  m.ill_conditioned = largest > kConditioningThreshold;
  return m;
}

double horner(std::span<const double> coeffs, double v) {
  if (coeffs.empty()) return 0.0;
  double s = coeffs.back();
  double err = 0.0;
  for (std::size_t idx = coeffs.size() - 1; idx-- > 0;) {
    const double p = s * v;
    const double pi = std::fma(s, v, -p);  // exact: s*v = p + pi
    const double sum = p + coeffs[idx];
    const double bb = sum - p;
    const double sigma = (p - (sum - bb)) + (coeffs[idx] - bb);  // exact: p + c = sum + sigma
    s = sum;
    err = err * v + (pi + sigma);
  }
  return s + err;
}

}  // namespace fide::basis
