#include "fide/specialfn.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fide/error.hpp"

namespace fide::special {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos{
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Largest argument with a finite Gamma value.
constexpr double kGammaMax = 171.6243769563027;

// Lanczos series A(z) for Gamma(z + 1), z >= -0.5.
double lanczos_sum(double z) {
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (z + static_cast<double>(i));
  return sum;
}

constexpr std::array<double, 24> make_factorials() {
  std::array<double, 24> f{};
  f[0] = 1.0;
  for (std::size_t i = 1; i < f.size(); ++i) f[i] = f[i - 1] * static_cast<double>(i);
  return f;
}
// n! is exactly representable for n <= 22.
constexpr auto kFactorials = make_factorials();

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Lanczos approximation, used on [0.5, 2).
double gamma_lanczos(double x) {
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * lanczos_sum(z) * std::pow(t, z + 0.5) * std::exp(-t);
}

// Gamma for x >= 0.5. Larger arguments are shifted down into [1, 2) with
// Gamma(x) = (x-1)(x-2)...(x-n) Gamma(x-n); each factor is exact in doubles.
double gamma_upper(double x) {
  if (x == std::floor(x) && x <= 23.0) return kFactorials[static_cast<std::size_t>(x) - 1];
  if (2.0 * x == std::floor(2.0 * x) && x <= 23.0) {
    // Gamma(n + 1/2) = sqrt(pi) (1/2)(3/2)...(n - 1/2)
    double product = 1.0;
    for (double f = 0.5; f < x; f += 1.0) product *= f;
    return product * std::sqrt(std::numbers::pi);
  }
  if (x < 2.0) return gamma_lanczos(x);
  const double base = x - (std::floor(x) - 1.0);
  double product = 1.0;
  for (double f = x - 2.0; f >= base; f -= 1.0) product *= f;
  // The largest factor goes last so nothing overflows below kGammaMax.
  return product * gamma_lanczos(base) * (x - 1.0);
}

}  // namespace

double gamma(double x) {
  if (std::isnan(x)) throw Error(ErrorCode::Domain, "gamma of NaN");
  if (is_nonpositive_integer(x)) throw Error(ErrorCode::Pole, "gamma has a pole at " + std::to_string(x));
  if (x > kGammaMax) throw Error(ErrorCode::Overflow, "gamma overflows at " + std::to_string(x));
  if (x < 0.5) {
    // Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_upper(1.0 - x));
  }
  return gamma_upper(x);
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::Domain, "log_gamma requires x > 0, got " + std::to_string(x));
  if (x == 1.0 || x == 2.0) return 0.0;
  if (x < 16.0) return std::log(gamma(x));
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(lanczos_sum(z));
}

namespace {

// sum_m (-1)^m (x/2)^{2m+order} / (m! (m+order)!), stopped once a term drops
// below 1e-18 in magnitude.
double bessel_series(int order, double x) {
  const double half = 0.5 * x;
  const double h2 = half * half;
  double term = order == 0 ? 1.0 : half;
  double sum = term;
  for (int m = 1; m < 200; ++m) {
    term *= -h2 / (static_cast<double>(m) * static_cast<double>(m + order));
    sum += term;
    if (std::abs(term) < 1e-18) break;
  }
  return sum;
}

}  // namespace

double bessel_j0(double x) { return bessel_series(0, x); }

double bessel_j1(double x) { return bessel_series(1, x); }

}  // namespace fide::special
