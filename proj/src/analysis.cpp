#include "fide/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "fide/error.hpp"
#include "fide/quadrature.hpp"

namespace fide::analysis {
namespace {

std::string format_g16(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16g", value);
  return buf;
}

}  // namespace

double l2_error(const SpectralSolution& sol, const UnaryFunction& exact, std::size_t points) {
  if (points < 2) throw Error(ErrorCode::InvalidArgument, "error quadrature needs at least 2 points");
  const QuadratureRule& rule = legendre_gauss(points);
  double sum = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double x = rule.nodes[k];
    const double e = exact(x) - eval_solution(sol, x);
    sum += rule.weights[k] * e * e;
  }
  return std::sqrt(sum);
}

double linf_error(const SpectralSolution& sol, const UnaryFunction& exact, std::size_t grid) {
  if (grid < 2) throw Error(ErrorCode::InvalidArgument, "max-norm grid needs at least 2 points");
  double worst = 0.0;
  for (std::size_t k = 1; k <= grid; ++k) {
    const double x = static_cast<double>(k) / static_cast<double>(grid);
    worst = std::max(worst, std::abs(exact(x) - eval_solution(sol, x)));
  }
  return worst;
}

ConvergenceReport convergence_sweep(const Problem& problem, std::span<const std::size_t> orders,
                                    std::size_t error_quad_points, std::size_t linf_grid) {
  if (!problem.exact) {
    throw Error(ErrorCode::MissingExact, "problem '" + problem.name + "' has no exact solution to measure against");
  }
  if (orders.empty()) throw Error(ErrorCode::InvalidArgument, "convergence sweep needs at least one order");
  for (std::size_t n : orders)
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "convergence sweep orders must be >= 1");

  std::vector<std::size_t> sorted(orders.begin(), orders.end());
  std::sort(sorted.begin(), sorted.end());

  // ||u||_2 for the machine-floor flag.
  const QuadratureRule& rule = legendre_gauss(error_quad_points);
  double exact_norm = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double u = (*problem.exact)(rule.nodes[k]);
    exact_norm += rule.weights[k] * u * u;
  }
  exact_norm = std::sqrt(exact_norm);

  ConvergenceReport report;
  report.problem_name = problem.name;
  report.error_quad_points = error_quad_points;
  report.linf_grid = linf_grid;
  for (std::size_t n : sorted) {
    ConvergenceRow row;
    row.order = n;
    const auto start = std::chrono::steady_clock::now();
    SpectralSolution sol;
    try {
      sol = solve(problem, n);
    } catch (const Error& e) {
      throw Error(e.code(), "sweep aborted at N=" + std::to_string(n) + ": " + e.what());
    }
    const auto stop = std::chrono::steady_clock::now();
    row.elapsed_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    row.l2_error = l2_error(sol, *problem.exact, error_quad_points);
    row.linf_error = linf_error(sol, *problem.exact, linf_grid);
    row.condition_estimate = sol.diagnostics.condition_estimate;
    row.residual = sol.diagnostics.relative_residual;
    row.at_machine_floor = row.l2_error < 1e-15 * (1.0 + exact_norm);
    report.rows.push_back(row);
  }
  return report;
}

DecayFit fit_decay(std::span<const std::size_t> orders, std::span<const double> errors) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < orders.size() && i < errors.size(); ++i) {
    if (errors[i] > kDecayFloor) {
      xs.push_back(static_cast<double>(orders[i]));
      ys.push_back(std::log10(errors[i]));
    }
  }
  if (xs.size() < 3) {
    throw Error(ErrorCode::InsufficientRows, "decay fit needs at least 3 rows with error above 1e-14, have " +
                                                 std::to_string(xs.size()));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  DecayFit fit;
  fit.rows_used = xs.size();
  if (sxx == 0.0) throw Error(ErrorCode::InsufficientRows, "decay fit needs at least two distinct orders");
  fit.slope = sxy / sxx;
  if (syy == 0.0 || std::all_of(ys.begin(), ys.end(), [&](double y) { return y == ys.front(); })) {
    fit.slope = 0.0;
    fit.r_squared = std::numeric_limits<double>::quiet_NaN();
    fit.convergent = false;
    return fit;
  }
  fit.r_squared = (sxy * sxy) / (sxx * syy);
  fit.convergent = fit.slope < 0.0;
  return fit;
}

DecayFit fitted_decay_rate(const ConvergenceReport& report) {
  std::vector<std::size_t> orders;
  std::vector<double> errors;
  for (const auto& row : report.rows) {
    orders.push_back(row.order);
    errors.push_back(row.l2_error);
  }
  return fit_decay(orders, errors);
}

std::string to_csv(const ConvergenceReport& report) {
  std::string out = "N,l2_error,linf_error,cond_estimate,elapsed_ms\n";
  for (const auto& row : report.rows) {
    out += std::to_string(row.order) + "," + format_g16(row.l2_error) + "," + format_g16(row.linf_error) + "," +
           format_g16(row.condition_estimate) + "," + format_g16(row.elapsed_ms) + "\n";
  }
  return out;
}

std::string to_json(const ConvergenceReport& report) {
  nlohmann::ordered_json j;
  j["problem_name"] = report.problem_name;
  j["error_quad_points"] = report.error_quad_points;
  j["linf_grid"] = report.linf_grid;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json r;
    r["N"] = row.order;
    r["l2_error"] = row.l2_error;
    r["linf_error"] = row.linf_error;
    r["condition_estimate"] = row.condition_estimate;
    r["elapsed_ms"] = row.elapsed_ms;
    r["residual"] = row.residual;
    r["at_machine_floor"] = row.at_machine_floor;
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string to_plot_data(const ConvergenceReport& report) {
  std::string out;
  for (const auto& row : report.rows) {
    out += std::to_string(row.order) + " " + format_g16(std::log10(row.l2_error)) + "\n";
  }
  return out;
}

}  // namespace fide::analysis
