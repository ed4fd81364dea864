#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fide/galerkin.hpp"

namespace fide::analysis {

inline constexpr std::size_t kDefaultErrorQuadPoints = 200;

/// sqrt(sum_k delta_k (u(x_k) - u_N(x_k))^2) on an M-point Legendre rule in x.
double l2_error(const SpectralSolution& sol, const UnaryFunction& exact,
                std::size_t points = kDefaultErrorQuadPoints);

/// max |u - u_N| over x = k/grid, k = 1..grid.
double linf_error(const SpectralSolution& sol, const UnaryFunction& exact, std::size_t grid);

struct ConvergenceRow {
  std::size_t order = 0;
  double l2_error = 0.0;
  double linf_error = 0.0;
  double condition_estimate = 0.0;
  double elapsed_ms = 0.0;
  double residual = 0.0;
  bool at_machine_floor = false;
};

struct ConvergenceReport {
  std::string problem_name;
  std::vector<ConvergenceRow> rows;  // ascending order
  std::size_t error_quad_points = kDefaultErrorQuadPoints;
  std::size_t linf_grid = 0;
};

inline constexpr std::size_t kDefaultLinfGrid = 1000;

/// One independent solve per order. Orders are reported ascending.
ConvergenceReport convergence_sweep(const Problem& problem, std::span<const std::size_t> orders,
                                    std::size_t error_quad_points = kDefaultErrorQuadPoints,
                                    std::size_t linf_grid = kDefaultLinfGrid);

struct DecayFit {
  double slope = 0.0;      // d log10(error) / dN
  double r_squared = 0.0;  // NaN when the errors are constant
  std::size_t rows_used = 0;
  bool convergent = false;  // slope < 0 with a defined fit
};

inline constexpr double kDecayFloor = 1e-14;

/// Least-squares fit of log10(l2_error) against N over rows with error > 1e-14.
DecayFit fitted_decay_rate(const ConvergenceReport& report);

/// Same fit on raw (N, error) pairs.
DecayFit fit_decay(std::span<const std::size_t> orders, std::span<const double> errors);

std::string to_csv(const ConvergenceReport& report);
std::string to_json(const ConvergenceReport& report);
/// Two columns: N log10_l2_error.
std::string to_plot_data(const ConvergenceReport& report);

}  // namespace fide::analysis
