#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fide {

// Dense row-major matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  static DenseMatrix identity(std::size_t n);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

std::vector<double> multiply(const DenseMatrix& a, std::span<const double> x);

double norm1(const DenseMatrix& a);

struct SolveDiagnostics {
  double relative_residual = 0.0;   // ||A x - b||_2 / ||b||_2 (absolute when b = 0)
  double condition_estimate = 0.0;  // estimate of ||A||_1 ||A^{-1}||_1
};

struct LinearSolution {
  std::vector<double> x;
  SolveDiagnostics diagnostics;
};

// LU factorization with partial pivoting.
class LuFactorization {
 public:
  /// Throws SingularMatrix when a pivot falls below 1e-300 in magnitude.
  explicit LuFactorization(const DenseMatrix& a);

  std::vector<double> solve(std::span<const double> b) const;
  std::vector<double> solve_transposed(std::span<const double> b) const;

  /// Hager-style estimate of ||A^{-1}||_1, at most five sweeps.
  double inverse_norm1_estimate() const;

 private:
  DenseMatrix lu_;
  std::vector<std::size_t> perm_;
};

inline constexpr double kPivotFloor = 1e-300;

LinearSolution lu_solve(const DenseMatrix& a, std::span<const double> b);

}  // namespace fide
