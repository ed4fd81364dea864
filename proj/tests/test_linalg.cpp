#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fide/error.hpp"
#include "fide/linalg.hpp"

using namespace fide;

TEST_CASE("identity system") {
  const DenseMatrix id = DenseMatrix::identity(4);
  const std::vector<double> b{1.0, -2.0, 3.5, 0.25};
  const LinearSolution s = lu_solve(id, b);
  CHECK(s.x == b);
  CHECK(s.diagnostics.relative_residual == 0.0);
  CHECK(s.diagnostics.condition_estimate == doctest::Approx(1.0));
}

TEST_CASE("scalar and 2x2 systems") {
  DenseMatrix a(1, 1);
  a(0, 0) = std::sqrt(std::numbers::pi);
  const std::vector<double> one{1.0};
  CHECK(std::abs(lu_solve(a, one).x[0] - 0.5641895835477563) < 1e-16);

  DenseMatrix b(2, 2);
  b(0, 0) = 2.0;
  b(0, 1) = 1.0;
  b(1, 0) = 1.0;
  b(1, 1) = 3.0;
  const std::vector<double> rhs{3.0, 4.0};
  const auto s = lu_solve(b, rhs);
  CHECK(std::abs(s.x[0] - 1.0) < 1e-15);
  CHECK(std::abs(s.x[1] - 1.0) < 1e-15);
  // ||B||_1 ||B^{-1}||_1 = 4 * (4/5)
  CHECK(s.diagnostics.condition_estimate == doctest::Approx(3.2));
}

TEST_CASE("pivoting handles a zero leading entry") {
  DenseMatrix a(2, 2);
  a(0, 1) = 1.0;
  a(1, 0) = 1.0;
  const std::vector<double> b{5.0, 7.0};
  const auto s = lu_solve(a, b);
  CHECK(s.x[0] == 7.0);
  CHECK(s.x[1] == 5.0);
}

TEST_CASE("singular matrix") {
  DenseMatrix a(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = 2.0;
  a(1, 0) = 2.0;
  a(1, 1) = 4.0;
  const std::vector<double> b{1.0, 1.0};
  try {
    lu_solve(a, b);
    FAIL("expected singular matrix");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularMatrix);
  }
}

TEST_CASE("random systems: small residual, condition estimate is a lower bound within 10x") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 9);
    DenseMatrix a(n, n);
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
      b[i] = g(rng);
      for (std::size_t j = 0; j < n; ++j) a(i, j) = g(rng);
    }
    const auto s = lu_solve(a, b);
    CHECK(s.diagnostics.relative_residual < 1e-12);

    // Exact ||A^{-1}||_1 from the columns of the inverse.
    const LuFactorization lu(a);
    double inv_norm = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<double> e(n, 0.0);
      e[j] = 1.0;
      const auto col = lu.solve(e);
      double sum = 0.0;
      for (double v : col) sum += std::abs(v);
      inv_norm = std::max(inv_norm, sum);
    }
    const double exact = norm1(a) * inv_norm;
    CHECK(s.diagnostics.condition_estimate <= exact * (1.0 + 1e-10));
    CHECK(s.diagnostics.condition_estimate >= exact / 10.0);

    // Transposed solve consistency.
    const auto y = lu.solve_transposed(b);
    for (std::size_t i = 0; i < n; ++i) {
      double s2 = 0.0;
      for (std::size_t k = 0; k < n; ++k) s2 += a(k, i) * y[k];
      CHECK(std::abs(s2 - b[i]) < 1e-9 * (1.0 + std::abs(b[i])));
    }
  }
}
