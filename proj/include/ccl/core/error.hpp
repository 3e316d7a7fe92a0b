#pragma once

#include <stdexcept>
#include <string>

namespace ccl {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input. `line()` is 1-based; 0 when no line applies.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// A desk-scale size guard was exceeded.
class GuardError : public Error {
 public:
  using Error::Error;
};

// Shapes, domains or variable counts that do not fit together.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A checked mathematical invariant failed. Carries the invariant's name.
class InvariantError : public Error {
 public:
  InvariantError(std::string invariant, const std::string& witness)
      : Error(invariant + ": " + witness), invariant_(std::move(invariant)) {}
  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

}  // namespace ccl
