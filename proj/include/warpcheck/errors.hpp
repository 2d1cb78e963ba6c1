#ifndef WARPCHECK_ERRORS_HPP
#define WARPCHECK_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace warpcheck {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed expression text; `offset` is the byte position of the problem.
struct SyntaxError : Error {
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " (at offset " + std::to_string(offset) + ")"), offset(offset) {}
  std::size_t offset;
};

// Identifier that is neither a chart variable, a named constant, nor a function.
struct UnknownIdentifier : Error {
  explicit UnknownIdentifier(const std::string& ident)
      : Error("unknown identifier '" + ident + "'"), name(ident) {}
  std::string name;
};

// Evaluation left the real domain (log of <=0, division by zero, ...).
// `subexpr` is the printed offending sub-expression.
struct DomainError : Error {
  DomainError(const std::string& what, std::string sub)
      : Error(what + " in '" + sub + "'"), subexpr(std::move(sub)) {}
  std::string subexpr;
};

struct DegenerateMetric : Error {
  using Error::Error;
};

struct NameClash : Error {
  using Error::Error;
};

struct NonPositiveWarp : Error {
  using Error::Error;
};

struct ZeroH : Error {
  using Error::Error;
};

struct ZeroC : Error {
  using Error::Error;
};

struct BadParams : Error {
  using Error::Error;
};

struct EmptyGrid : Error {
  using Error::Error;
};

struct SingularJacobian : Error {
  using Error::Error;
};

}  // namespace warpcheck

#endif  // WARPCHECK_ERRORS_HPP
