#ifndef MN22_ERRORS_HPP
#define MN22_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mn22 {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Shape/dimension mismatches and malformed in-memory objects.
class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& what) : Error(what) {}
};

// Arguments outside an operation's mathematical domain (n < 2, q0 outside [0,1], ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

// A resource guard refused the computation (enumeration or LP size limits).
class GuardError : public Error {
 public:
  explicit GuardError(const std::string& what) : Error(what) {}
};

// Malformed serialized input (JSON/CSV); carries a human-readable location.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

// The LP solver failed to converge within its pivot budget, or an internal
// post-solution certificate check failed.  Never a silent wrong answer.
class LPError : public Error {
 public:
  explicit LPError(const std::string& what) : Error(what) {}
};

}  // namespace mn22

#endif  // MN22_ERRORS_HPP
