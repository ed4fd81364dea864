#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fide/error.hpp"
#include "fide/fracops.hpp"
#include "fide/quadrature.hpp"

using namespace fide;
using namespace fide::fracops;

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

long double factorial(int n) {
  long double f = 1.0L;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// Coefficient of v^k in Psi_j written literally with csc(pi q):
// 2/Gamma(1-q) (-1)^{j-1-k} (j+k)! / ((k!)^2 (j-1-k)!) * q pi csc(pi q) Gamma(q+qk) / (Gamma(q) Gamma(1+kq)).
double csc_form_coefficient(int j, int k, double q) {
  REQUIRE(q >= 0.01);
  REQUIRE(q <= 0.99);
  const long double csc = 1.0L / std::sin(std::numbers::pi_v<long double> * q);
  const long double sign = (j - 1 - k) % 2 == 0 ? 1.0L : -1.0L;
  const long double fact = factorial(j + k) / (factorial(k) * factorial(k) * factorial(j - 1 - k));
  const long double integral = q * std::numbers::pi_v<long double> * csc * std::tgamma(q + q * k) /
                               (std::tgamma(static_cast<long double>(q)) * std::tgamma(1.0L + k * q));
  return static_cast<double>(2.0L / std::tgamma(1.0L - q) * sign * fact * integral);
}

// d/dw G_j(w) from the explicit factorial expansion of G_j.
double trial_derivative(int j, double w) {
  long double sum = 0.0L;
  for (int k = 0; k < j; ++k) {
    const long double sign = (j - 1 - k) % 2 == 0 ? 1.0L : -1.0L;
    const long double c = 2.0L * sign * factorial(j + k) / (factorial(k + 1) * factorial(j - 1 - k) * factorial(k));
    sum += (k + 1) * c * std::pow(static_cast<long double>(w), k);
  }
  return static_cast<double>(sum);
}

// (1/Gamma(1-q)) int_0^v (v^{1/q} - w^{1/q})^{-q} G_j'(w) dw by direct quadrature.
// w = v (1 - r^{1/(1-q)}) absorbs the (v - w)^{-q} endpoint singularity.
double singular_integral_oracle(int j, double q, double v) {
  const QuadratureRule rule = build_legendre_gauss(2000);
  const double a = 1.0 / (1.0 - q);
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double r = rule.nodes[k];
    const double s = std::pow(r, a);  // 1 - w/v
    const double w = v * (1.0 - s);
    // v^{1/q} - w^{1/q} = v^{1/q} (1 - (1-s)^{1/q}), without cancellation
    const double gap = std::pow(v, 1.0 / q) * -std::expm1(std::log1p(-s) / q);
    const double jac = v * a * std::pow(r, a - 1.0);
    sum += rule.weights[k] * std::pow(gap, -q) * trial_derivative(j, w) * jac;
  }
  return sum / std::tgamma(1.0 - q);
}

}  // namespace

TEST_CASE("caputo_monomial_image") {
  CHECK(std::abs(caputo_monomial_image(0, 0.5) - 0.8862269254527580) < 1e-15);
  CHECK(std::abs(caputo_monomial_image(1, 0.5) - 1.1283791670955126) < 1e-15);
  for (double q : {0.1, 0.25, 0.6, 0.95}) {
    CHECK(caputo_monomial_image(0, q) == doctest::Approx(std::tgamma(1.0 + q)).epsilon(1e-14));
  }
  for (double bad : {0.0, 1.0, -0.2, 1.5}) {
    try {
      caputo_monomial_image(1, bad);
      FAIL("expected invalid argument");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidArgument);
    }
  }
}

TEST_CASE("psi_table rows") {
  const PsiTable t(2, 0.5);
  REQUIRE(t.row(1).size() == 1);
  CHECK(std::abs(t.row(1)[0] - 2.0 * std::tgamma(1.5)) < 1e-14);
  CHECK(std::abs(t.row(1)[0] - kSqrtPi) < 1e-14);
  REQUIRE(t.row(2).size() == 2);
  CHECK(std::abs(t.row(2)[0] + 2.0 * kSqrtPi) < 1e-14);
  CHECK(std::abs(t.row(2)[1] - 12.0 / kSqrtPi) < 1e-14);

  const PsiTable quarter(1, 0.25);
  CHECK(std::abs(quarter.row(1)[0] - 1.812804954110954) < 1e-14);

  CHECK_THROWS_AS(PsiTable(0, 0.5), Error);
  CHECK_THROWS_AS(PsiTable(3, 1.0), Error);
  try {
    t.row(3);
    FAIL("expected index error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IndexOutOfRange);
  }
}

TEST_CASE("psi_eval") {
  const PsiTable t(2, 0.5);
  CHECK(std::abs(psi_eval(t, 1, 0.99) - kSqrtPi) < 1e-14);
  CHECK(std::abs(psi_eval(t, 2, 0.0) + 2.0 * kSqrtPi) < 1e-14);
  CHECK(std::abs(psi_eval(t, 2, std::numbers::pi / 6.0)) < 1e-13);
  CHECK_THROWS_AS(psi_eval(t, 0, 0.5), Error);
}

TEST_CASE("csc form and gamma-ratio form agree") {
  for (double q : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const PsiTable t(15, q);
    for (int j = 1; j <= 15; ++j) {
      const auto row = t.row(static_cast<std::size_t>(j));
      for (int k = 0; k < j; ++k) {
        const double oracle = csc_form_coefficient(j, k, q);
        CHECK_MESSAGE(std::abs(row[static_cast<std::size_t>(k)] - oracle) <= 1e-11 * std::abs(oracle),
                      "q=" << q << " j=" << j << " k=" << k);
      }
    }
  }
}

TEST_CASE("psi_eval matches singular-integral quadrature") {
  for (double q : {0.3, 0.5}) {
    const PsiTable t(6, q);
    for (int j = 1; j <= 6; ++j) {
      for (double v : {0.2, 0.5, 0.9}) {
        const double got = psi_eval(t, static_cast<std::size_t>(j), v);
        const double oracle = singular_integral_oracle(j, q, v);
        CHECK_MESSAGE(std::abs(got - oracle) <= 1e-6 * std::abs(oracle),
                      "q=" << q << " j=" << j << " v=" << v << " got=" << got << " oracle=" << oracle);
      }
    }
  }
}

TEST_CASE("Psi_j has degree exactly j-1") {
  for (double q : {0.2, 0.5, 0.8}) {
    const PsiTable t(40, q);
    for (std::size_t j = 1; j <= 40; ++j) {
      CHECK(t.row(j).size() == j);
      CHECK(t.row(j).back() != 0.0);
      for (double c : t.row(j)) CHECK(std::isfinite(c));
    }
    CHECK(t.ill_conditioned());
  }
  CHECK_FALSE(PsiTable(12, 0.5).ill_conditioned());
  // Log-space assembly stays finite far beyond factorial overflow.
  const PsiTable big(200, 0.5);
  for (double c : big.row(200)) CHECK(std::isfinite(c));
}

TEST_CASE("compensated Horner beats plain Horner on alternating sums") {
  // (v - 1)^12 expanded: heavy cancellation near v = 1.
  std::vector<double> c(13);
  for (int k = 0; k <= 12; ++k) {
    double binom = 1.0;
    for (int i = 1; i <= k; ++i) binom = binom * (12 - i + 1) / i;
    c[static_cast<std::size_t>(k)] = binom * ((12 - k) % 2 == 0 ? 1.0 : -1.0);
  }
  const double v = 0.99;
  const double exact = std::pow(v - 1.0, 12);
  CHECK(std::abs(compensated_horner(c, v) - exact) < 1e-20);
}
