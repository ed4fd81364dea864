#include "fide/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#include "fide/error.hpp"
#include "fide/specialfn.hpp"

namespace fide::expr {
namespace {

struct BuiltinInfo {
  std::string_view name;
  Builtin fn;
  std::size_t arity;
};

constexpr std::array<BuiltinInfo, 11> kBuiltins{{
    {"sin", Builtin::Sin, 1},
    {"cos", Builtin::Cos, 1},
    {"tan", Builtin::Tan, 1},
    {"exp", Builtin::Exp, 1},
    {"log", Builtin::Log, 1},
    {"sqrt", Builtin::Sqrt, 1},
    {"abs", Builtin::Abs, 1},
    {"pow", Builtin::Pow, 2},
    {"gamma", Builtin::Gamma, 1},
    {"besselj0", Builtin::BesselJ0, 1},
    {"besselj1", Builtin::BesselJ1, 1},
}};

const BuiltinInfo* find_builtin(std::string_view name) {
  auto it = std::find_if(kBuiltins.begin(), kBuiltins.end(),
                         [&](const BuiltinInfo& b) { return b.name == name; });
  return it == kBuiltins.end() ? nullptr : &*it;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Scans a number starting at i; returns the end offset.
std::size_t scan_number(std::string_view s, std::size_t i) {
  const std::size_t start = i;
  while (i < s.size() && is_digit(s[i])) ++i;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && is_digit(s[i])) ++i;
  }
  if (i == start + 1 && s[start] == '.') {
    throw PositionedError(ErrorCode::Lexical, start, "malformed number '.'");
  }
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    std::size_t j = i + 1;
    if (j < s.size() && (s[j] == '+' || s[j] == '-')) ++j;
    if (j < s.size() && is_digit(s[j])) {
      while (j < s.size() && is_digit(s[j])) ++j;
      i = j;
    }
  }
  return i;
}

Expr make(Node node) { return Expr(std::make_shared<const Node>(std::move(node))); }

class Parser {
 public:
  Parser(std::string_view source, std::span<const std::string> allowed)
      : source_(source), tokens_(tokenize(source)), allowed_(allowed) {}

  Expr run() {
    Expr e = parse_sum();
    if (pos_ < tokens_.size()) {
      throw PositionedError(ErrorCode::Syntax, tokens_[pos_].position,
                            "unexpected token '" + tokens_[pos_].lexeme + "'");
    }
    return e;
  }

 private:
  const Token* peek() const { return pos_ < tokens_.size() ? &tokens_[pos_] : nullptr; }

  bool peek_is(TokenKind kind, std::string_view lexeme) const {
    const Token* t = peek();
    return t && t->kind == kind && t->lexeme == lexeme;
  }

  std::size_t here() const { return pos_ < tokens_.size() ? tokens_[pos_].position : source_.size(); }

  void expect(TokenKind kind, std::string_view lexeme) {
    if (!peek_is(kind, lexeme)) {
      const Token* t = peek();
      throw PositionedError(ErrorCode::Syntax, here(),
                            "expected '" + std::string(lexeme) + "' but found " +
                                (t ? "'" + t->lexeme + "'" : std::string("end of input")));
    }
    ++pos_;
  }

  Expr parse_sum() {
    Expr left = parse_product();
    while (peek_is(TokenKind::Operator, "+") || peek_is(TokenKind::Operator, "-")) {
      const auto op = static_cast<BinaryOp>(tokens_[pos_++].lexeme[0]);
      Expr right = parse_product();
      left = make(Node{Binary{op, std::move(left), std::move(right)}});
    }
    return left;
  }

  Expr parse_product() {
    Expr left = parse_unary();
    while (peek_is(TokenKind::Operator, "*") || peek_is(TokenKind::Operator, "/")) {
      const auto op = static_cast<BinaryOp>(tokens_[pos_++].lexeme[0]);
      Expr right = parse_unary();
      left = make(Node{Binary{op, std::move(left), std::move(right)}});
    }
    return left;
  }

  Expr parse_unary() {
    if (peek_is(TokenKind::Operator, "-")) {
      ++pos_;
      return make(Node{Negate{parse_unary()}});
    }
    if (peek_is(TokenKind::Operator, "+")) {
      ++pos_;
      return parse_unary();
    }
    return parse_power();
  }

  // The exponent may carry its own sign: 2^-1.
  Expr parse_power() {
    Expr base = parse_primary();
    if (peek_is(TokenKind::Operator, "^")) {
      ++pos_;
      Expr exponent = parse_unary();
      return make(Node{Binary{BinaryOp::Pow, std::move(base), std::move(exponent)}});
    }
    return base;
  }

  Expr parse_primary() {
    const Token* t = peek();
    if (!t) throw PositionedError(ErrorCode::Syntax, source_.size(), "unexpected end of input");
    switch (t->kind) {
      case TokenKind::Number: {
        ++pos_;
        const double value = std::strtod(t->lexeme.c_str(), nullptr);
        if (!std::isfinite(value)) {
          throw PositionedError(ErrorCode::Lexical, t->position, "numeric literal out of range");
        }
        return make(Node{Constant{value}});
      }
      case TokenKind::Identifier:
        ++pos_;
        if (peek_is(TokenKind::Paren, "(")) return parse_call(*t);
        return parse_name(*t);
      case TokenKind::Paren:
        if (t->lexeme == "(") {
          ++pos_;
          Expr inner = parse_sum();
          expect(TokenKind::Paren, ")");
          return inner;
        }
        break;
      default:
        break;
    }
    throw PositionedError(ErrorCode::Syntax, t->position, "unexpected token '" + t->lexeme + "'");
  }

  Expr parse_name(const Token& t) {
    auto it = std::find(allowed_.begin(), allowed_.end(), t.lexeme);
    if (it != allowed_.end()) {
      return make(Node{Variable{t.lexeme, static_cast<std::size_t>(it - allowed_.begin())}});
    }
    if (t.lexeme == "pi") return make(Node{Constant{std::numbers::pi}});
    if (t.lexeme == "e") return make(Node{Constant{std::numbers::e}});
    std::string allowed = "{";
    for (std::size_t i = 0; i < allowed_.size(); ++i) {
      if (i) allowed += ", ";
      allowed += allowed_[i];
    }
    allowed += "}";
    throw PositionedError(ErrorCode::UnknownVariable, t.position,
                          "unknown variable '" + t.lexeme + "' (allowed: " + allowed + ")");
  }

  Expr parse_call(const Token& name) {
    const BuiltinInfo* info = find_builtin(name.lexeme);
    if (!info) {
      throw PositionedError(ErrorCode::UnknownFunction, name.position,
                            "unknown function '" + name.lexeme + "'");
    }
    expect(TokenKind::Paren, "(");
    std::vector<Expr> args;
    if (!peek_is(TokenKind::Paren, ")")) {
      args.push_back(parse_sum());
      while (peek_is(TokenKind::Comma, ",")) {
        ++pos_;
        args.push_back(parse_sum());
      }
    }
    expect(TokenKind::Paren, ")");
    if (args.size() != info->arity) {
      throw PositionedError(ErrorCode::Syntax, name.position,
                            "function '" + name.lexeme + "' expects " + std::to_string(info->arity) +
                                " argument(s), got " + std::to_string(args.size()));
    }
    return make(Node{Call{info->fn, std::move(args)}});
  }

  std::string_view source_;
  std::vector<Token> tokens_;
  std::span<const std::string> allowed_;
  std::size_t pos_ = 0;
};

[[noreturn]] void domain_error(const Expr& where, const std::string& what) {
  throw Error(ErrorCode::Domain, what + " in '" + to_string(where) + "'");
}

struct Evaluator {
  std::span<const double> values;

  double operator()(const Expr& e) const {
    return std::visit([&](const auto& n) { return visit(e, n); }, e.node().value);
  }

  double visit(const Expr&, const Constant& c) const { return c.value; }

  double visit(const Expr&, const Variable& v) const { return values[v.slot]; }

  double visit(const Expr&, const Negate& n) const { return -(*this)(n.operand); }

  double visit(const Expr& self, const Binary& b) const {
    const double l = (*this)(b.left);
    const double r = (*this)(b.right);
    switch (b.op) {
      case BinaryOp::Add: return l + r;
      case BinaryOp::Sub: return l - r;
      case BinaryOp::Mul: return l * r;
      case BinaryOp::Div:
        if (r == 0.0) domain_error(self, "division by zero");
        return l / r;
      case BinaryOp::Pow: {
        const double p = std::pow(l, r);
        if (std::isnan(p)) domain_error(self, "power of negative base to non-integer exponent");
        return p;
      }
    }
    return 0.0;
  }

  double visit(const Expr& self, const Call& c) const {
    const double a = (*this)(c.args[0]);
    switch (c.fn) {
      case Builtin::Sin: return std::sin(a);
      case Builtin::Cos: return std::cos(a);
      case Builtin::Tan: return std::tan(a);
      case Builtin::Exp: return std::exp(a);
      case Builtin::Log:
        if (!(a > 0.0)) domain_error(self, "log of non-positive argument " + std::to_string(a));
        return std::log(a);
      case Builtin::Sqrt:
        if (a < 0.0) domain_error(self, "sqrt of negative argument " + std::to_string(a));
        return std::sqrt(a);
      case Builtin::Abs: return std::abs(a);
      case Builtin::Pow: {
        const double p = std::pow(a, (*this)(c.args[1]));
        if (std::isnan(p)) domain_error(self, "power of negative base to non-integer exponent");
        return p;
      }
      case Builtin::Gamma:
        try {
          return special::gamma(a);
        } catch (const Error& err) {
          domain_error(self, err.what());
        }
      case Builtin::BesselJ0: return special::bessel_j0(a);
      case Builtin::BesselJ1: return special::bessel_j1(a);
    }
    return 0.0;
  }
};

void collect_vars(const Expr& e, std::set<std::string>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Variable>) {
          out.insert(n.name);
        } else if constexpr (std::is_same_v<T, Negate>) {
          collect_vars(n.operand, out);
        } else if constexpr (std::is_same_v<T, Binary>) {
          collect_vars(n.left, out);
          collect_vars(n.right, out);
        } else if constexpr (std::is_same_v<T, Call>) {
          for (const auto& a : n.args) collect_vars(a, out);
        }
      },
      e.node().value);
}

void collect_slots(const Expr& e, std::vector<std::pair<std::size_t, std::string>>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Variable>) {
          out.emplace_back(n.slot, n.name);
        } else if constexpr (std::is_same_v<T, Negate>) {
          collect_slots(n.operand, out);
        } else if constexpr (std::is_same_v<T, Binary>) {
          collect_slots(n.left, out);
          collect_slots(n.right, out);
        } else if constexpr (std::is_same_v<T, Call>) {
          for (const auto& a : n.args) collect_slots(a, out);
        }
      },
      e.node().value);
}

}  // namespace

std::string_view builtin_name(Builtin fn) noexcept {
  for (const auto& b : kBuiltins)
    if (b.fn == fn) return b.name;
  return "?";
}

std::size_t builtin_arity(Builtin fn) noexcept {
  for (const auto& b : kBuiltins)
    if (b.fn == fn) return b.arity;
  return 0;
}

std::vector<Token> tokenize(std::string_view source) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < source.size()) {
    const char c = source[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
    } else if (is_digit(c) || c == '.') {
      const std::size_t end = scan_number(source, i);
      if (end < source.size() && source[end] == '.') {
        throw PositionedError(ErrorCode::Lexical, end, "malformed number");
      }
      tokens.push_back({TokenKind::Number, std::string(source.substr(i, end - i)), i});
      i = end;
    } else if (is_ident_start(c)) {
      std::size_t end = i + 1;
      while (end < source.size() && is_ident_char(source[end])) ++end;
      tokens.push_back({TokenKind::Identifier, std::string(source.substr(i, end - i)), i});
      i = end;
    } else if (c == '+' || c == '-' || c == '*' || c == '/' || c == '^') {
      tokens.push_back({TokenKind::Operator, std::string(1, c), i++});
    } else if (c == '(' || c == ')') {
      tokens.push_back({TokenKind::Paren, std::string(1, c), i++});
    } else if (c == ',') {
      tokens.push_back({TokenKind::Comma, ",", i++});
    } else {
      throw PositionedError(ErrorCode::Lexical, i, "unrecognized character '" + std::string(1, c) + "'");
    }
  }
  return tokens;
}

Expr parse(std::string_view source, std::span<const std::string> allowed_vars) {
  return Parser(source, allowed_vars).run();
}

double eval(const Expr& e, std::span<const double> values) { return Evaluator{values}(e); }

double eval(const Expr& e, const std::map<std::string, double>& bindings) {
  std::vector<std::pair<std::size_t, std::string>> slots;
  collect_slots(e, slots);
  std::size_t n = 0;
  for (const auto& [slot, name] : slots) n = std::max(n, slot + 1);
  std::vector<double> values(n, 0.0);
  for (const auto& [slot, name] : slots) {
    auto it = bindings.find(name);
    if (it == bindings.end()) throw Error(ErrorCode::InvalidArgument, "no binding for variable '" + name + "'");
    values[slot] = it->second;
  }
  return eval(e, values);
}

std::set<std::string> free_vars(const Expr& e) {
  std::set<std::string> out;
  collect_vars(e, out);
  return out;
}

std::string to_string(const Expr& e) {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Constant>) {
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.17g", n.value);
          return buf;
        } else if constexpr (std::is_same_v<T, Variable>) {
          return n.name;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return "(-" + to_string(n.operand) + ")";
        } else if constexpr (std::is_same_v<T, Binary>) {
          return "(" + to_string(n.left) + static_cast<char>(n.op) + to_string(n.right) + ")";
        } else {
          std::string s(builtin_name(n.fn));
          s += "(";
          for (std::size_t i = 0; i < n.args.size(); ++i) {
            if (i) s += ",";
            s += to_string(n.args[i]);
          }
          return s + ")";
        }
      },
      e.node().value);
}

}  // namespace fide::expr
