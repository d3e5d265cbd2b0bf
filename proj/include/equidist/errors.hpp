#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace equidist {

/// Raised when an operation is called outside its domain (degree too small,
/// zero polynomial, invalid parameters).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by iterative kernels that fail to reach their tolerance.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double worst_residual = 0.0)
      : std::runtime_error(what), worst_residual_(worst_residual) {}

  double worst_residual() const noexcept { return worst_residual_; }

 private:
  double worst_residual_;
};

/// Round-and-verify failed at the requested working precision.
class InsufficientPrecision : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Quadrature that did not settle before its node cap.
class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, double previous, double last)
      : NumericalError(what + " (last estimates " + std::to_string(previous) + ", " + std::to_string(last) + ")",
                       std::abs(last - previous)),
        previous_(previous),
        last_(last) {}

  double previous() const noexcept { return previous_; }
  double last() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

/// Text input that does not match a grammar. Line and column are 1-based.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::invalid_argument(what + " (line " + std::to_string(line) + ", column " +
                              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace equidist
