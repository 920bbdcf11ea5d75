#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace doa {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed system-definition text. `line` and `column` are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Dimension or degree outside the supported range, or a coefficient table
/// that would not fit the memory budget.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Some eigenvalue of the linearization has a non-negative real part.
class NotHurwitz : public Error {
 public:
  NotHurwitz(const std::string& message, std::complex<double> eigenvalue)
      : Error(message), eigenvalue_(eigenvalue) {}
  std::complex<double> eigenvalue() const { return eigenvalue_; }

 private:
  std::complex<double> eigenvalue_;
};

/// The linearization has no well-conditioned eigenbasis.
class NotDiagonalizable : public Error {
 public:
  NotDiagonalizable(const std::string& message, double condition)
      : Error(message), condition_(condition) {}
  double condition() const { return condition_; }

 private:
  double condition_;
};

/// A value that must be real on the real slice came out with a significant
/// imaginary part. Indicates broken conjugate pairing in the eigenbasis.
class ImaginaryLeak : public Error {
 public:
  using Error::Error;
};

/// Center selection found no admissible boundary point. This is the natural
/// termination of atlas growth.
class NoCandidates : public Error {
 public:
  using Error::Error;
};

class UnknownExactDA : public Error {
 public:
  using Error::Error;
};

}  // namespace doa
