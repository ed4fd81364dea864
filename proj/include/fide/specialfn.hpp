#pragma once

namespace fide::special {

/// Gamma function. Lanczos (g = 7, 9 terms) with reflection below 0.5; exact
/// for small positive integers. Throws Pole at non-positive integers and
/// Overflow above 171.6.
double gamma(double x);

/// log(Gamma(x)) for x > 0; throws Domain otherwise.
double log_gamma(double x);

/// Bessel functions of the first kind by the ascending power series.
/// Accurate to 1e-14 for |x| <= 2.
double bessel_j0(double x);
double bessel_j1(double x);

}  // namespace fide::special
