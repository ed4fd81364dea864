// fide: command-line front end over the C API in fide/fide.h.
//
//   fide solve    --problem FILE --order N [--output FILE] [--grid M]
//   fide converge --problem FILE --orders SPEC [--csv FILE] [--json FILE] [--plot FILE]
//   fide rule     --points n
//   fide check    --problem FILE
//
// Exit codes: 0 success, 1 runtime or solve failure, 2 usage error.

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fide/fide.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kDefaultErrorQuadPoints = 200;

struct UsageError {
  std::string message;
};

// Problem handle with automatic release.
class ProblemHandle {
 public:
  ProblemHandle() = default;
  ProblemHandle(const ProblemHandle&) = delete;
  ProblemHandle& operator=(const ProblemHandle&) = delete;
  ~ProblemHandle() { fide_problem_free(ptr_); }
  fide_problem** out() { return &ptr_; }
  const fide_problem* get() const { return ptr_; }

 private:
  fide_problem* ptr_ = nullptr;
};

class SolutionHandle {
 public:
  SolutionHandle() = default;
  SolutionHandle(const SolutionHandle&) = delete;
  SolutionHandle& operator=(const SolutionHandle&) = delete;
  ~SolutionHandle() { fide_solution_free(ptr_); }
  fide_solution** out() { return &ptr_; }
  const fide_solution* get() const { return ptr_; }

 private:
  fide_solution* ptr_ = nullptr;
};

class ReportHandle {
 public:
  ReportHandle() = default;
  ReportHandle(const ReportHandle&) = delete;
  ReportHandle& operator=(const ReportHandle&) = delete;
  ~ReportHandle() { fide_report_free(ptr_); }
  fide_report** out() { return &ptr_; }
  const fide_report* get() const { return ptr_; }

 private:
  fide_report* ptr_ = nullptr;
};

int runtime_failure(const char* context) {
  std::fprintf(stderr, "error: %s: %s\n", context, fide_last_error());
  return kExitRuntime;
}

int parse_positive(const std::string& text, const char* what) {
  std::size_t used = 0;
  long value = 0;
  try {
    value = std::stol(text, &used);
  } catch (const std::exception&) {
    throw UsageError{std::string("invalid ") + what + " '" + text + "'"};
  }
  if (used != text.size() || value < 1 || value > 100000) {
    throw UsageError{std::string("invalid ") + what + " '" + text + "' (expected a positive integer)"};
  }
  return static_cast<int>(value);
}

// "a:b:s" is the inclusive range a, a+s, ..., <= b; otherwise a comma list.
std::vector<int> parse_orders(const std::string& spec) {
  std::vector<int> orders;
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t pos; (pos = spec.find(':', start)) != std::string::npos; start = pos + 1) {
      parts.push_back(spec.substr(start, pos - start));
    }
    parts.push_back(spec.substr(start));
    if (parts.size() != 3) throw UsageError{"orders range must have the form a:b:s, got '" + spec + "'"};
    const int a = parse_positive(parts[0], "range start");
    const int b = parse_positive(parts[1], "range end");
    const int s = parse_positive(parts[2], "range step");
    if (a > b) throw UsageError{"orders range '" + spec + "' is empty"};
    for (int n = a; n <= b; n += s) orders.push_back(n);
    return orders;
  }
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = spec.find(',', start);
    orders.push_back(parse_positive(spec.substr(start, pos - start), "order"));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return orders;
}

int error_quad_points_from_env() {
  const char* raw = std::getenv("FIDE_ERROR_QUAD_POINTS");
  if (!raw) return kDefaultErrorQuadPoints;
  char* end = nullptr;
  errno = 0;
  const long value = std::strtol(raw, &end, 10);
  if (errno != 0 || end == raw || *end != '\0' || value < 2 || value > 100000) {
    std::fprintf(stderr, "warning: ignoring FIDE_ERROR_QUAD_POINTS='%s' (need an integer >= 2); using %d\n", raw,
                 kDefaultErrorQuadPoints);
    return kDefaultErrorQuadPoints;
  }
  return static_cast<int>(value);
}

int cmd_solve(const std::string& problem_path, int order, const std::optional<std::string>& output, int grid) {
  if (order < 1) throw UsageError{"--order must be >= 1, got " + std::to_string(order)};
  if (grid < 0) throw UsageError{"--grid must be >= 0"};

  ProblemHandle problem;
  if (fide_problem_load(problem_path.c_str(), problem.out()) != FIDE_OK) return runtime_failure("loading problem");
  SolutionHandle solution;
  if (fide_solve(problem.get(), order, solution.out()) != FIDE_OK) return runtime_failure("solving");

  double residual = 0.0;
  double cond = 0.0;
  fide_solution_diagnostics(solution.get(), &residual, &cond);
  if (output && fide_solution_write_json(solution.get(), problem.get(), grid, output->c_str()) != FIDE_OK) {
    return runtime_failure("writing solution");
  }
  std::printf("N=%d residual=%.3e cond=%.3e\n", order, residual, cond);
  return kExitOk;
}

int cmd_converge(const std::string& problem_path, const std::string& orders_spec,
                 const std::optional<std::string>& csv, const std::optional<std::string>& json,
                 const std::optional<std::string>& plot) {
  const std::vector<int> orders = parse_orders(orders_spec);

  ProblemHandle problem;
  if (fide_problem_load(problem_path.c_str(), problem.out()) != FIDE_OK) return runtime_failure("loading problem");
  if (!fide_problem_has_exact(problem.get())) {
    std::fprintf(stderr, "error: problem '%s' has no exact solution; converge needs one\n",
                 fide_problem_name(problem.get()));
    return kExitRuntime;
  }

  ReportHandle report;
  if (fide_converge(problem.get(), orders.data(), orders.size(), error_quad_points_from_env(), report.out()) !=
      FIDE_OK) {
    return runtime_failure("convergence sweep");
  }
  if (csv && fide_report_write_csv(report.get(), csv->c_str()) != FIDE_OK) return runtime_failure("writing CSV");
  if (json && fide_report_write_json(report.get(), json->c_str()) != FIDE_OK) return runtime_failure("writing JSON");
  if (plot && fide_report_write_plot(report.get(), plot->c_str()) != FIDE_OK) {
    return runtime_failure("writing plot data");
  }

  std::printf("%4s  %10s\n", "N", "l2_error");
  for (std::size_t i = 0; i < fide_report_rows(report.get()); ++i) {
    int n = 0;
    double l2 = 0.0;
    fide_report_row(report.get(), i, &n, &l2, nullptr, nullptr, nullptr);
    std::printf("%4d  %10.2e\n", n, l2);
  }
  return kExitOk;
}

int cmd_rule(int points) {
  if (points < 1) throw UsageError{"--points must be >= 1"};
  std::vector<double> nodes(static_cast<std::size_t>(points));
  std::vector<double> weights(static_cast<std::size_t>(points));
  if (fide_rule(points, nodes.data(), weights.data()) != FIDE_OK) return runtime_failure("building rule");
  for (std::size_t i = 0; i < nodes.size(); ++i) std::printf("%.16g %.16g\n", nodes[i], weights[i]);
  return kExitOk;
}

void print_check(const char* name, int passed, const char* detail, void*) {
  std::printf("%s %s: %s\n", passed ? "PASS" : "FAIL", name, detail);
}

int cmd_check(const std::string& problem_path) {
  ProblemHandle problem;
  if (fide_problem_load(problem_path.c_str(), problem.out()) != FIDE_OK) {
    std::printf("FAIL load: %s\n", fide_last_error());
    return kExitRuntime;
  }
  std::printf("PASS load: problem '%s'\n", fide_problem_name(problem.get()));
  int all_passed = 0;
  if (fide_check(problem.get(), print_check, nullptr, &all_passed) != FIDE_OK) return runtime_failure("check");
  return all_passed ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral Galerkin solver for fractional integro-differential equations"};
  app.require_subcommand(1);

  std::string problem_path;
  int order = 0;
  int grid = 0;
  std::optional<std::string> output;
  auto* solve = app.add_subcommand("solve", "Solve a problem at one order and report diagnostics");
  solve->add_option("--problem", problem_path, "Problem JSON file")->required();
  solve->add_option("--order", order, "Number of trial functions N")->required();
  solve->add_option("--output", output, "Write the solution JSON here");
  solve->add_option("--grid", grid, "Sample u_N at M equispaced points in (0,1] in the output");

  std::string orders_spec;
  std::optional<std::string> csv, json, plot;
  auto* converge = app.add_subcommand("converge", "Convergence sweep against the exact solution");
  converge->add_option("--problem", problem_path, "Problem JSON file")->required();
  converge->add_option("--orders", orders_spec, "a:b:s inclusive range or comma list")->required();
  converge->add_option("--csv", csv, "CSV report path");
  converge->add_option("--json", json, "JSON report path");
  converge->add_option("--plot", plot, "Semi-log plot data path");

  int points = 0;
  auto* rule = app.add_subcommand("rule", "Print Gauss-Legendre nodes and weights on [0,1]");
  rule->add_option("--points", points, "Number of points")->required();

  auto* check = app.add_subcommand("check", "Validate a problem file and run self-tests on its data");
  check->add_option("--problem", problem_path, "Problem JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(problem_path, order, output, grid);
    if (converge->parsed()) return cmd_converge(problem_path, orders_spec, csv, json, plot);
    if (rule->parsed()) return cmd_rule(points);
    if (check->parsed()) return cmd_check(problem_path);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.message.c_str());
    return kExitUsage;
  }
  return kExitUsage;
}
