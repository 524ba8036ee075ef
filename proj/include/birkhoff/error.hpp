#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace birkhoff {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument values: n = 0, k out of range, negative tolerances, etc.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Integer result would not fit in 64 bits.
class OverflowError : public Error {
 public:
  using Error::Error;
};

// A functional of order k >= 1 with a zero direction vector.
class DegenerateNode : public Error {
 public:
  using Error::Error;
};

// Node counts per order do not match what the operation needs.
class SchemeShapeError : public Error {
 public:
  SchemeShapeError(const std::string& what, std::vector<int> offending_orders)
      : Error(what), offending_orders_(std::move(offending_orders)) {}

  const std::vector<int>& offending_orders() const noexcept { return offending_orders_; }

 private:
  std::vector<int> offending_orders_;
};

// The interpolation problem has no unique solution. `degree()` is the
// smallest degree whose homogeneous Vandermonde system is singular, or -1
// when singularity was detected on the full system only.
class SingularError : public Error {
 public:
  SingularError(const std::string& what, int degree, std::vector<int> failing_degrees = {})
      : Error(what), degree_(degree), failing_degrees_(std::move(failing_degrees)) {}

  int degree() const noexcept { return degree_; }
  const std::vector<int>& failing_degrees() const noexcept { return failing_degrees_; }

 private:
  int degree_;
  std::vector<int> failing_degrees_;
};

// Malformed JSON or schema violations in input files.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Invariant broken inside the library (e.g. LP certificate failed).
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace birkhoff
