#include "fide/error.hpp"

namespace fide {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::Lexical: return "lexical error";
    case ErrorCode::Syntax: return "syntax error";
    case ErrorCode::UnknownFunction: return "unknown function";
    case ErrorCode::UnknownVariable: return "unknown variable";
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::Pole: return "pole error";
    case ErrorCode::Overflow: return "overflow error";
    case ErrorCode::ConvergenceFailure: return "convergence failure";
    case ErrorCode::IndexOutOfRange: return "index out of range";
    case ErrorCode::Precondition: return "precondition violation";
    case ErrorCode::NonFinite: return "non-finite value";
    case ErrorCode::SingularMatrix: return "singular matrix";
    case ErrorCode::Io: return "I/O error";
    case ErrorCode::JsonSyntax: return "JSON syntax error";
    case ErrorCode::Schema: return "schema error";
    case ErrorCode::QRange: return "q-range error";
    case ErrorCode::MissingExact: return "missing exact solution";
    case ErrorCode::InsufficientRows: return "insufficient rows";
  }
  return "unknown error";
}

}  // namespace fide
