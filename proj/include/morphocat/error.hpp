#pragma once

#include <stdexcept>
#include <string>

namespace morphocat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// unify/subsumes called on structures of different signs. Distinct from a
// unification failure, which is an ordinary empty result.
class SignMismatch : public Error {
 public:
  using Error::Error;
};

class DanglingTag : public Error {
 public:
  using Error::Error;
};

// Beta reduction ran out of its step budget.
class ReductionLimit : public Error {
 public:
  using Error::Error;
};

// A meta-phoneme could not be resolved (e.g. no vowel in the host).
class HarmonyError : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column),
        message_(msg) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  int line_;
  int column_;
  std::string message_;
};

}  // namespace morphocat
