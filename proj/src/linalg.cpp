#include "fide/linalg.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "fide/error.hpp"

namespace fide {

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> multiply(const DenseMatrix& a, std::span<const double> x) {
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

double norm1(const DenseMatrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

LuFactorization::LuFactorization(const DenseMatrix& a) : lu_(a), perm_(a.rows()) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::InvalidArgument, "LU needs a square matrix");
  const std::size_t n = a.rows();
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu_(i, k)) > std::abs(lu_(pivot, k))) pivot = i;
    if (!(std::abs(lu_(pivot, k)) >= kPivotFloor)) {
      throw Error(ErrorCode::SingularMatrix, "matrix is singular to working precision at column " + std::to_string(k));
    }
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(pivot, j));
      std::swap(perm_[k], perm_[pivot]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = lu_(i, k) / lu_(k, k);
      lu_(i, k) = l;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= l * lu_(k, j);
    }
  }
}

std::vector<double> LuFactorization::solve(std::span<const double> b) const {
  const std::size_t n = lu_.rows();
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[perm_[i]];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * x[j];
    x[i] = s / lu_(i, i);
  }
  return x;
}

// A = P^T L U, so A^T y = b  <=>  U^T L^T P y = b.
std::vector<double> LuFactorization::solve_transposed(std::span<const double> b) const {
  const std::size_t n = lu_.rows();
  std::vector<double> z(b.begin(), b.end());
  for (std::size_t i = 0; i < n; ++i) {
    double s = z[i];
    for (std::size_t j = 0; j < i; ++j) s -= lu_(j, i) * z[j];
    z[i] = s / lu_(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = z[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= lu_(j, i) * z[j];
    z[i] = s;
  }
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) y[perm_[i]] = z[i];
  return y;
}

double LuFactorization::inverse_norm1_estimate() const {
  const std::size_t n = lu_.rows();
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  double estimate = 0.0;
  std::size_t last_index = n;
  for (int sweep = 0; sweep < 5; ++sweep) {
    const std::vector<double> y = solve(x);
    double y1 = 0.0;
    for (double v : y) y1 += std::abs(v);
    if (sweep > 0 && y1 <= estimate) break;
    estimate = y1;
    std::vector<double> signs(n);
    for (std::size_t i = 0; i < n; ++i) signs[i] = y[i] >= 0.0 ? 1.0 : -1.0;
    const std::vector<double> z = solve_transposed(signs);
    std::size_t jmax = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(z[i]) > std::abs(z[jmax])) jmax = i;
    if (jmax == last_index) break;
    last_index = jmax;
    std::fill(x.begin(), x.end(), 0.0);
    x[jmax] = 1.0;
  }
  return estimate;
}

LinearSolution lu_solve(const DenseMatrix& a, std::span<const double> b) {
  if (b.size() != a.rows()) throw Error(ErrorCode::InvalidArgument, "right-hand side length mismatch");
  const LuFactorization lu(a);
  LinearSolution out;
  out.x = lu.solve(b);

  const std::vector<double> ax = multiply(a, out.x);
  double r2 = 0.0;
  double b2 = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    r2 += (ax[i] - b[i]) * (ax[i] - b[i]);
    b2 += b[i] * b[i];
  }
  out.diagnostics.relative_residual = b2 > 0.0 ? std::sqrt(r2 / b2) : std::sqrt(r2);
  out.diagnostics.condition_estimate = norm1(a) * lu.inverse_norm1_estimate();
  return out;
}

}  // namespace fide
