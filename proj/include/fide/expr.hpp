#pragma once

// Scalar expression language used by problem files: numbers, the variables
// declared for the expression's role, + - * / ^, unary minus, parentheses and
// a fixed set of builtin functions.

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fide::expr {

enum class TokenKind { Number, Identifier, Operator, Paren, Comma };

struct Token {
  TokenKind kind;
  std::string lexeme;
  std::size_t position;  // 0-based character offset into the source

  bool operator==(const Token&) const = default;
};

/// Splits source into tokens. Whitespace is skipped; any other character that
/// cannot start a token raises a Lexical PositionedError.
std::vector<Token> tokenize(std::string_view source);

enum class BinaryOp : char { Add = '+', Sub = '-', Mul = '*', Div = '/', Pow = '^' };

enum class Builtin { Sin, Cos, Tan, Exp, Log, Sqrt, Abs, Pow, Gamma, BesselJ0, BesselJ1 };

std::string_view builtin_name(Builtin fn) noexcept;
std::size_t builtin_arity(Builtin fn) noexcept;

struct Node;

// Immutable expression tree. Copies share nodes.
class Expr {
 public:
  Expr() = default;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  const Node& node() const { return *node_; }
  bool empty() const noexcept { return node_ == nullptr; }

 private:
  std::shared_ptr<const Node> node_;
};

struct Constant {
  double value;
};
struct Variable {
  std::string name;
  std::size_t slot;  // index into the allowed-variable list given to parse
};
struct Negate {
  Expr operand;
};
struct Binary {
  BinaryOp op;
  Expr left;
  Expr right;
};
struct Call {
  Builtin fn;
  std::vector<Expr> args;
};

struct Node {
  std::variant<Constant, Variable, Negate, Binary, Call> value;
};

/// Variable sets for the roles an expression can play in a problem file.
inline const std::vector<std::string> kVarsX{"x"};
inline const std::vector<std::string> kVarsXT{"x", "t"};

/// Parses source. Variables must come from allowed_vars; each Variable node
/// records its index in that list as its evaluation slot. Precedence from
/// tightest: ^ (right associative), unary -, * /, + -.
Expr parse(std::string_view source, std::span<const std::string> allowed_vars);

/// Evaluates with values indexed by variable slot. Domain violations throw
/// Error(Domain) naming the offending sub-expression.
double eval(const Expr& e, std::span<const double> values);

/// Evaluates with named bindings. Missing names throw InvalidArgument.
double eval(const Expr& e, const std::map<std::string, double>& bindings);

std::set<std::string> free_vars(const Expr& e);

/// Fully parenthesized rendering; parse(to_string(e)) evaluates bit-identically.
std::string to_string(const Expr& e);

}  // namespace fide::expr
