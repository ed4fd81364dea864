#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "fide/error.hpp"
#include "fide/expr.hpp"

using namespace fide;
using namespace fide::expr;

namespace {

ErrorCode error_code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a fide::Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("tokenize") {
  SUBCASE("simple product") {
    const auto toks = tokenize("2*x");
    REQUIRE(toks.size() == 3);
    CHECK(toks[0] == Token{TokenKind::Number, "2", 0});
    CHECK(toks[1] == Token{TokenKind::Operator, "*", 1});
    CHECK(toks[2] == Token{TokenKind::Identifier, "x", 2});
  }
  SUBCASE("function calls") {
    const auto toks = tokenize("sin(x)/sqrt(x)");
    // sin ( x ) / sqrt ( x )
    REQUIRE(toks.size() == 9);
    CHECK(toks.back().kind == TokenKind::Paren);
    CHECK(toks.back().lexeme == ")");
  }
  SUBCASE("number forms") {
    const auto toks = tokenize("12 3.5 .25 1e-3 2.5E+2 7.");
    REQUIRE(toks.size() == 6);
    for (const auto& t : toks) CHECK(t.kind == TokenKind::Number);
    CHECK(toks[3].lexeme == "1e-3");
  }
  SUBCASE("malformed number") {
    try {
      tokenize("3..5");
      FAIL("expected lexical error");
    } catch (const PositionedError& e) {
      CHECK(e.code() == ErrorCode::Lexical);
      CHECK(e.position() == 2);
    }
  }
  SUBCASE("unrecognized character") {
    try {
      tokenize("x $ 2");
      FAIL("expected lexical error");
    } catch (const PositionedError& e) {
      CHECK(e.code() == ErrorCode::Lexical);
      CHECK(e.position() == 2);
    }
  }
  SUBCASE("lexemes and whitespace reconstruct the source, positions increase") {
    const std::string src = "  sqrt( x * t ) +\t2.5e1 ^ pi , e";
    const auto toks = tokenize(src);
    std::string rebuilt;
    std::size_t last = 0;
    for (std::size_t i = 0; i < toks.size(); ++i) {
      if (i > 0) CHECK(toks[i].position > toks[i - 1].position);
      rebuilt += src.substr(last, toks[i].position - last);  // skipped whitespace
      rebuilt += toks[i].lexeme;
      last = toks[i].position + toks[i].lexeme.size();
    }
    rebuilt += src.substr(last);
    CHECK(rebuilt == src);
  }
}

TEST_CASE("parse structure") {
  SUBCASE("precedence x^2*t") {
    const Expr e = parse("x^2*t", kVarsXT);
    const auto& mul = std::get<Binary>(e.node().value);
    CHECK(mul.op == BinaryOp::Mul);
    const auto& pow = std::get<Binary>(mul.left.node().value);
    CHECK(pow.op == BinaryOp::Pow);
    CHECK(std::get<Variable>(pow.left.node().value).name == "x");
    CHECK(std::get<Constant>(pow.right.node().value).value == 2.0);
    CHECK(std::get<Variable>(mul.right.node().value).name == "t");
  }
  SUBCASE("call sqrt(x*t)") {
    const Expr e = parse("sqrt(x*t)", kVarsXT);
    const auto& call = std::get<Call>(e.node().value);
    CHECK(call.fn == Builtin::Sqrt);
    REQUIRE(call.args.size() == 1);
    CHECK(std::get<Binary>(call.args[0].node().value).op == BinaryOp::Mul);
  }
  SUBCASE("pi and e fold to constants") {
    CHECK(std::get<Constant>(parse("pi", kVarsX).node().value).value == std::numbers::pi);
    CHECK(std::get<Constant>(parse("e", kVarsX).node().value).value == std::numbers::e);
  }
  SUBCASE("unary minus binds looser than ^") {
    const Expr e = parse("-x^2", kVarsX);
    CHECK(std::holds_alternative<Negate>(e.node().value));
    CHECK(eval(e, {{"x", 3.0}}) == -9.0);
  }
}

TEST_CASE("parse errors") {
  SUBCASE("unknown variable names offender and allowed set") {
    try {
      parse("sin(y)", kVarsX);
      FAIL("expected error");
    } catch (const PositionedError& e) {
      CHECK(e.code() == ErrorCode::UnknownVariable);
      CHECK(e.position() == 4);
      const std::string msg = e.what();
      CHECK(msg.find("'y'") != std::string::npos);
      CHECK(msg.find("{x}") != std::string::npos);
    }
  }
  SUBCASE("unknown function") {
    CHECK(error_code_of([] { parse("foo(x)", kVarsX); }) == ErrorCode::UnknownFunction);
  }
  SUBCASE("arity mismatch") {
    CHECK(error_code_of([] { parse("pow(x)", kVarsX); }) == ErrorCode::Syntax);
    CHECK(error_code_of([] { parse("sin(x, x)", kVarsX); }) == ErrorCode::Syntax);
  }
  SUBCASE("syntax errors carry positions") {
    try {
      parse("2 + * 3", kVarsX);
      FAIL("expected error");
    } catch (const PositionedError& e) {
      CHECK(e.code() == ErrorCode::Syntax);
      CHECK(e.position() == 4);
    }
    CHECK(error_code_of([] { parse("(x + 1", kVarsX); }) == ErrorCode::Syntax);
    CHECK(error_code_of([] { parse("x 1", kVarsX); }) == ErrorCode::Syntax);
    CHECK(error_code_of([] { parse("", kVarsX); }) == ErrorCode::Syntax);
  }
}

TEST_CASE("eval") {
  CHECK(eval(parse("sin(x)/sqrt(x)", kVarsX), {{"x", 0.25}}) == doctest::Approx(0.4948079185090459).epsilon(1e-15));
  CHECK(eval(parse("pi", kVarsX), std::map<std::string, double>{}) == std::numbers::pi);
  CHECK(eval(parse("2+3*4", kVarsX), std::map<std::string, double>{}) == 14.0);
  CHECK(eval(parse("2^3^2", kVarsX), std::map<std::string, double>{}) == 512.0);
  CHECK(eval(parse("2^-1", kVarsX), std::map<std::string, double>{}) == 0.5);
  CHECK(eval(parse("pow(x, 3) - abs(-x)", kVarsX), {{"x", 2.0}}) == 6.0);
  CHECK(eval(parse("gamma(5)", kVarsX), std::map<std::string, double>{}) == 24.0);
  CHECK(eval(parse("besselj0(0)", kVarsX), std::map<std::string, double>{}) == 1.0);
  CHECK(eval(parse("x*t", kVarsXT), {{"x", 3.0}, {"t", 4.0}}) == 12.0);

  SUBCASE("slot evaluation matches named evaluation") {
    const Expr e = parse("sqrt(x*t) + t", kVarsXT);
    const double values[] = {0.3, 0.7};
    CHECK(eval(e, values) == eval(e, {{"x", 0.3}, {"t", 0.7}}));
  }
  SUBCASE("domain errors name the sub-expression") {
    try {
      eval(parse("1 + sqrt(x)", kVarsX), {{"x", -1.0}});
      FAIL("expected domain error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Domain);
      CHECK(std::string(e.what()).find("sqrt(x)") != std::string::npos);
    }
    CHECK(error_code_of([] { eval(parse("log(x)", kVarsX), {{"x", 0.0}}); }) == ErrorCode::Domain);
    CHECK(error_code_of([] { eval(parse("1/x", kVarsX), {{"x", 0.0}}); }) == ErrorCode::Domain);
    CHECK(error_code_of([] { eval(parse("x^0.5", kVarsX), {{"x", -2.0}}); }) == ErrorCode::Domain);
    CHECK(error_code_of([] { eval(parse("gamma(x)", kVarsX), {{"x", -1.0}}); }) == ErrorCode::Domain);
  }
  SUBCASE("missing binding") {
    CHECK(error_code_of([] { eval(parse("x", kVarsX), std::map<std::string, double>{}); }) == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("free_vars") {
  CHECK(free_vars(parse("x*t+1", kVarsXT)) == std::set<std::string>{"x", "t"});
  CHECK(free_vars(parse("gamma(0.5)", kVarsX)).empty());
  CHECK(free_vars(parse("sin(x)*cos(x)", kVarsX)) == std::set<std::string>{"x"});
}

TEST_CASE("pretty-print round trip evaluates bit-identically") {
  const char* sources[] = {
      "sin(x)/sqrt(x)",
      "(-x + sqrt(x)*(sqrt(x)*cos(x) + sqrt(pi)*(besselj0(x/2)*cos(x/2) - besselj1(x/2)*sin(x/2))) - 2*sin(x)) / "
      "(2*sqrt(x))",
      "x^2*t - -t/3.141592653589793e0",
      "gamma(1.9)/gamma(1.6)*x^0.6 - exp(-x)*x^0.9 - 0.5*x^1.2/1.2",
      "2^-x^t + pow(t, x) * abs(x - t) - tan(0.1*x)",
      "-(-(x)) * 1e-3 + log(1 + t) + e",
  };
  std::mt19937_64 rng(20261016);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const char* src : sources) {
    const Expr e = parse(src, kVarsXT);
    const std::string printed = to_string(e);
    const Expr back = parse(printed, kVarsXT);
    CHECK(to_string(back) == printed);
    for (int k = 0; k < 100; ++k) {
      // Keep x away from 0 so sqrt(x) in a denominator stays finite.
      const double values[] = {1e-3 + unit(rng), unit(rng)};
      const double a = eval(e, values);
      const double b = eval(back, values);
      CHECK(std::memcmp(&a, &b, sizeof a) == 0);
    }
  }
}
