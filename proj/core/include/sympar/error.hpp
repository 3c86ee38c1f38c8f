#pragma once

#include <stdexcept>
#include <string>

namespace sympar {

// Base class for all recoverable errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text (environment programs, formulas, dump files).
// Carries a 1-based source position when one is known.
class ParseError : public Error {
 public:
  ParseError(std::string msg, int line = 0, int col = 0)
      : Error(line > 0 ? std::to_string(line) + ":" + std::to_string(col) +
                             ": " + msg
                       : msg),
        raw_(std::move(msg)),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }
  const std::string& raw() const { return raw_; }  // message without position

 private:
  std::string raw_;
  int line_ = 0;
  int col_ = 0;
};

// Structurally valid program that violates a semantic rule (undeclared
// variable, duplicate action name, degenerate state box, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Runtime evaluation failure: division by zero, loop fuel exhaustion,
// or a comparison that cannot be decided at maximum working precision.
class EvalError : public Error {
 public:
  using Error::Error;
};

// External solver process failure or a reply that cannot be interpreted.
class SolverError : public Error {
 public:
  using Error::Error;
};

// A broken internal invariant.  These indicate bugs, not bad input, and
// are surfaced loudly instead of being papered over.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace sympar
