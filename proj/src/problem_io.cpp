#include "fide/problem_io.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "fide/basis.hpp"
#include "fide/error.hpp"
#include "fide/fracops.hpp"
#include "fide/quadrature.hpp"

namespace fide::io {
namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 8> kMembers{"name", "q", "lambda", "p", "f", "kernel", "d", "exact"};

const json& require_member(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw Error(ErrorCode::Schema, std::string("missing member '") + key + "'");
  return *it;
}

double number_member(const json& value, const char* key) {
  if (!value.is_number()) throw Error(ErrorCode::Schema, std::string("member '") + key + "' must be a number");
  return value.get<double>();
}

std::string string_member(const json& value, const char* key) {
  if (!value.is_string()) throw Error(ErrorCode::Schema, std::string("member '") + key + "' must be a string");
  return value.get<std::string>();
}

expr::Expr parse_member(const std::string& source, const char* key, const std::vector<std::string>& vars) {
  try {
    return expr::parse(source, vars);
  } catch (const Error& e) {
    throw Error(e.code(), std::string("member '") + key + "': " + e.what());
  }
}

UnaryFunction compile_unary(const expr::Expr& e) {
  return [e](double x) { return expr::eval(e, std::span<const double>(&x, 1)); };
}

BinaryFunction compile_binary(const expr::Expr& e) {
  return [e](double x, double t) {
    const std::array<double, 2> values{x, t};
    return expr::eval(e, values);
  };
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ProblemFile parse_problem(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::JsonSyntax, e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::Schema, "problem document must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (std::find(kMembers.begin(), kMembers.end(), key) == kMembers.end()) {
      throw Error(ErrorCode::Schema, "unknown member '" + key + "'");
    }
  }

  ProblemFile pf;
  pf.name = string_member(require_member(doc, "name"), "name");
  pf.q = number_member(require_member(doc, "q"), "q");
  if (!(pf.q > 0.0 && pf.q < 1.0)) {
    throw Error(ErrorCode::QRange, "q must lie in the open interval (0, 1), got " + format_g17(pf.q));
  }
  pf.lambda = number_member(require_member(doc, "lambda"), "lambda");
  pf.p_source = string_member(require_member(doc, "p"), "p");
  pf.f_source = string_member(require_member(doc, "f"), "f");
  pf.kernel_source = string_member(require_member(doc, "kernel"), "kernel");
  if (auto it = doc.find("d"); it != doc.end()) pf.d = number_member(*it, "d");
  if (auto it = doc.find("exact"); it != doc.end()) pf.exact_source = string_member(*it, "exact");

  pf.p = parse_member(pf.p_source, "p", expr::kVarsX);
  pf.f = parse_member(pf.f_source, "f", expr::kVarsX);
  pf.kernel = parse_member(pf.kernel_source, "kernel", expr::kVarsXT);
  if (pf.exact_source) pf.exact = parse_member(*pf.exact_source, "exact", expr::kVarsX);
  return pf;
}

ProblemFile read_problem_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open problem file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::Io, "error reading problem file '" + path + "'");
  return parse_problem(ss.str());
}

Problem to_problem(const ProblemFile& file) {
  Problem p;
  p.name = file.name;
  p.q = file.q;
  p.lambda = file.lambda;
  p.p = compile_unary(file.p);
  p.f = compile_unary(file.f);
  p.kernel = compile_binary(file.kernel);
  p.d = file.d;
  if (file.exact) p.exact = compile_unary(*file.exact);
  return p;
}

std::string solution_json(const std::string& name, double lambda, const SpectralSolution& sol, std::size_t grid) {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["q"] = sol.q;
  j["lambda"] = lambda;
  j["N"] = sol.order;
  j["coefficients"] = sol.coefficients;
  j["residual"] = sol.diagnostics.relative_residual;
  j["condition_estimate"] = sol.diagnostics.condition_estimate;
  if (grid > 0) {
    std::vector<double> xs, us;
    for (std::size_t k = 1; k <= grid; ++k) {
      const double x = static_cast<double>(k) / static_cast<double>(grid);
      xs.push_back(x);
      us.push_back(eval_solution(sol, x));
    }
    j["grid"] = {{"x", xs}, {"u", us}};
  }
  return j.dump(2) + "\n";
}

std::vector<CheckResult> run_checks(const Problem& problem) {
  std::vector<CheckResult> results;
  auto record = [&](std::string name, auto&& body) {
    CheckResult r{std::move(name), false, {}};
    try {
      r.detail = body();
      r.passed = true;
    } catch (const std::exception& e) {
      r.detail = e.what();
    }
    results.push_back(std::move(r));
  };

  record("quadrature", [] {
    const QuadratureRule& rule = legendre_gauss(3);
    const double v5 = integrate(rule, [](double v) { return v * v * v * v * v; });
    if (std::abs(v5 - 1.0 / 6.0) > 1e-14) throw Error(ErrorCode::NonFinite, "3-point rule is not exact for v^5");
    return std::string("3-point rule exact for v^5");
  });

  record("basis", [] {
    for (std::size_t i = 1; i <= 8; ++i) {
      const auto mono = basis::gjp_trial_monomials(i);
      for (double v : {0.1, 0.5, 0.9}) {
        const double a = basis::gjp_trial_eval(i, v);
        const double b = basis::horner(mono.coeffs, v);
        if (std::abs(a - b) > 1e-10 * std::max(1.0, std::abs(a))) {
          throw Error(ErrorCode::NonFinite, "trial function " + std::to_string(i) + " recurrence/monomial mismatch");
        }
      }
      if (basis::gjp_trial_eval(i, 0.0) != 0.0) throw Error(ErrorCode::NonFinite, "trial function nonzero at 0");
    }
    return std::string("trial functions 1..8 consistent, vanish at 0");
  });

  const Problem reduced = reduce_nonhomogeneous(problem);
  std::unique_ptr<TransformedProblem> tp;
  record("transform", [&] {
    tp = std::make_unique<TransformedProblem>(transform_problem(reduced));
    for (double v : {0.05, 0.25, 0.5, 0.75, 0.95}) {
      const double values[] = {tp->pbar(v), tp->fbar(v), tp->ktilde(v, 0.5 * v)};
      for (double x : values)
        if (!std::isfinite(x)) throw Error(ErrorCode::NonFinite, "non-finite transformed data at v=" + format_g17(v));
    }
    return std::string("p, f, K finite at sample points");
  });

  record("assemble", [&] {
    if (!tp) throw Error(ErrorCode::Precondition, "transform failed");
    const fracops::PsiTable psi(2, problem.q);
    const GalerkinSystem sys = assemble(*tp, 2, psi);
    const SpectralSolution sol = solve_system(sys);
    for (double a : sol.coefficients)
      if (!std::isfinite(a)) throw Error(ErrorCode::NonFinite, "non-finite N=2 coefficient");
    return "N=2 system solved, residual " + format_g17(sol.diagnostics.relative_residual);
  });

  if (problem.exact) {
    record("exact", [&] {
      for (double x : {0.01, 0.25, 0.5, 1.0})
        if (!std::isfinite((*problem.exact)(x))) throw Error(ErrorCode::NonFinite, "exact solution not finite");
      return std::string("exact solution finite at sample points");
    });
  }
  return results;
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::Io, "error writing '" + path + "'");
}

}  // namespace fide::io
