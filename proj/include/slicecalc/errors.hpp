#pragma once

#include <stdexcept>
#include <string>

namespace slicecalc {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands live in Clifford algebras of different dimension.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Inverse of a zero (or numerically zero) element, or a kernel evaluated on its singular set.
class SingularInput : public Error {
 public:
  using Error::Error;
};

// Evaluation point outside the support of a function or off the admissible region.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Invalid quadrature construction (patch escaping the profile, unsupported profile kind, ...).
class GeometryError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class UnsupportedOrder : public Error {
 public:
  using Error::Error;
};

// Parameters outside the range where the underlying estimate is known to hold.
class HypothesisViolation : public Error {
 public:
  using Error::Error;
};

class IllConditioned : public Error {
 public:
  IllConditioned(const std::string& what, double condition)
      : Error(what), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

}  // namespace slicecalc
