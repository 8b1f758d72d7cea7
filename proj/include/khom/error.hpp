#pragma once

#include <stdexcept>
#include <string>

namespace khom {

/// Base of every error the library raises. `kind()` is the machine-readable
/// tag the CLI reports.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
  virtual const char* kind() const noexcept { return "error"; }
};

/// Bad user input: unparsable files, invalid algebras, unknown names.
class InputError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "input"; }
};

class ParseError : public InputError {
 public:
  using InputError::InputError;
  const char* kind() const noexcept override { return "parse"; }
};

/// Structural violation: d^2 != 0, non-commuting map, relation not satisfied.
class StructureError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "structure"; }
};

/// Arithmetic misuse: division by zero, dimension mismatch.
class MathError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "math"; }
};

/// An operation's precondition on its mathematical input failed
/// (non-acyclic input to the acyclic Serre functor, decomposable AR input...).
class PreconditionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "precondition"; }
};

}  // namespace khom
