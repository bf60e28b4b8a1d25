#pragma once

#include <stdexcept>
#include <string>

namespace hnet {

/// Base for every library error. The CLI maps the subclasses onto exit codes.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad syntax, bad JSON, inconsistent arguments. CLI exit 2.
class InputError : public Error {
public:
  using Error::Error;
};

class ArithmeticError : public Error {
public:
  using Error::Error;
};

class WeightMismatch : public InputError {
public:
  using InputError::InputError;
};

class TruncationTooSmall : public InputError {
public:
  using InputError::InputError;
};

class ZeroDenominatorContent : public ArithmeticError {
public:
  using ArithmeticError::ArithmeticError;
};

class SingularSpecialization : public ArithmeticError {
public:
  using ArithmeticError::ArithmeticError;
};

class DimensionMismatch : public InputError {
public:
  using InputError::InputError;
};

/// An enumeration would exceed its configured budget. CLI exit 3.
class SizeGuardExceeded : public Error {
public:
  SizeGuardExceeded(const std::string& what, double estimated_cost)
      : Error(what), estimated_cost_(estimated_cost) {}
  double estimated_cost() const { return estimated_cost_; }

private:
  double estimated_cost_;
};

/// Network DSL errors.
class SyntaxError : public InputError {
public:
  SyntaxError(const std::string& msg, int line, int column)
      : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

class DuplicateDart : public InputError {
public:
  using InputError::InputError;
};

class MissingPartner : public InputError {
public:
  using InputError::InputError;
};

class DisconnectedNetwork : public InputError {
public:
  using InputError::InputError;
};

class UnknownPair : public InputError {
public:
  using InputError::InputError;
};

}  // namespace hnet
