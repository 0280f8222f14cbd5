#pragma once

#include <stdexcept>
#include <string>

namespace gmas {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed network text. Carries the 1-based line and column of the
// offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(message + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Structurally invalid network (undeclared species, self-loop, duplicate
// edge, missing kinetic complex at a source vertex, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Mismatched or unsupported dimensions (e.g. enumeration caps on the
// ambient dimension).
class DimensionError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an operation does not hold (e.g. the image
// of a matrix is not contained in the supplied subspace).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A numerical guarantee could not be met (residual too large, certificate
// verification failed, ...).
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A resource cap was exceeded (cycle enumeration, step limits).
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace gmas
