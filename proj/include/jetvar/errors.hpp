#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jetvar {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An index lies outside the declared coordinate range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Jet or vertical orders are inconsistent (e.g. s > r).
class OrderError : public Error {
 public:
  using Error::Error;
};

// Form degree does not admit the operation (e.g. contraction of a 0-form).
class DegreeError : public Error {
 public:
  using Error::Error;
};

// An expression mentions a coordinate that the context does not declare.
class CoordinateError : public Error {
 public:
  using Error::Error;
};

// A bundle declaration is malformed.
class BundleError : public Error {
 public:
  using Error::Error;
};

// Finite-difference stencil does not fit at the requested grid point.
class StencilError : public Error {
 public:
  using Error::Error;
};

// The Euler-Lagrange difference keeps X^p_σ terms with ‖σ‖ >= 1.
class ProjectabilityError : public Error {
 public:
  using Error::Error;
};

// Syntax or resolution error with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace jetvar
