#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fide {

enum class ErrorCode {
  InvalidArgument,
  Lexical,
  Syntax,
  UnknownFunction,
  UnknownVariable,
  Domain,
  Pole,
  Overflow,
  ConvergenceFailure,
  IndexOutOfRange,
  Precondition,
  NonFinite,
  SingularMatrix,
  Io,
  JsonSyntax,
  Schema,
  QRange,
  MissingExact,
  InsufficientRows,
};

std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported as fide::Error; code() identifies the
// category, what() carries the diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Expression errors that point at a character offset in the source text.
class PositionedError : public Error {
 public:
  PositionedError(ErrorCode code, std::size_t position, const std::string& message)
      : Error(code, message + " at offset " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace fide
