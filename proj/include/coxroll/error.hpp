#pragma once

#include <stdexcept>
#include <string>

namespace coxroll {

/// Base class for every error raised by the library. Domain errors (bad
/// mathematical input) and parse errors both derive from it so the CLI can
/// map them onto exit codes in one place.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class NotFinite : public DomainError {
 public:
  explicit NotFinite(const std::string& type)
      : DomainError("Coxeter group is not finite: " + type) {}
};

/// Raised when orbit closure exceeds the safety cap; indicates a bug or
/// non-finite input slipping past classification.
class NonClosure : public DomainError {
 public:
  using DomainError::DomainError;
};

class AngleUnrecognized : public DomainError {
 public:
  using DomainError::DomainError;
};

class InvalidOrbit : public DomainError {
 public:
  using DomainError::DomainError;
};

class UnsupportedSignature : public DomainError {
 public:
  using DomainError::DomainError;
};

class Ultraparallel : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotRealized : public DomainError {
 public:
  using DomainError::DomainError;
};

class Truncated : public DomainError {
 public:
  using DomainError::DomainError;
};

class MalformedMap : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Internal consistency failure: two independent computations that must
/// agree did not.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace coxroll
