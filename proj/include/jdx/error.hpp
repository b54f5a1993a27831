#ifndef JDX_ERROR_HPP
#define JDX_ERROR_HPP

#include <stdexcept>
#include <string>

namespace jdx {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Division that should be exact failed, or an inverse does not exist.
class DivisionError : public Error {
 public:
  explicit DivisionError(const std::string& msg) : Error(msg) {}
};

// Evaluation hit a pole or a vanishing denominator.
class PoleError : public Error {
 public:
  explicit PoleError(const std::string& msg) : Error(msg) {}
};

// Input parameters violate a structural precondition (generic-parameter
// conditions, kernel admissibility, basis degeneracy).
class AdmissibilityError : public Error {
 public:
  explicit AdmissibilityError(const std::string& msg) : Error(msg) {}
};

// Request falls outside the range the construction covers.
class ScopeError : public Error {
 public:
  explicit ScopeError(const std::string& msg) : Error(msg) {}
};

// Malformed input file or field.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

// An operation was applied to an object that does not support it
// (e.g. reflection of a sign-carrying coefficient).
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& msg) : Error(msg) {}
};

}  // namespace jdx

#endif
