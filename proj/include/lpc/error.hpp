#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace lpc {

/// Base of every checker failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ContextError : public Error {
 public:
  enum class Kind { Redeclaration, UndeclaredHead, UnknownSymbol };
  ContextError(Kind k, std::string symbol)
      : Error(describe(k, symbol)), kind(k), symbol(std::move(symbol)) {}

  Kind kind;
  std::string symbol;

 private:
  static std::string describe(Kind k, const std::string& s) {
    switch (k) {
      case Kind::Redeclaration:
        return "constant '" + s + "' is already declared";
      case Kind::UndeclaredHead:
        return "rule head '" + s + "' is not declared";
      case Kind::UnknownSymbol:
        return "unknown symbol '" + s + "'";
    }
    return s;
  }
};

enum class TypeErrorKind { Mismatch, NotAFunction, UnsortedBinder, Unbound, KindMisuse, NotInferable };

class TypeError : public Error {
 public:
  TypeError(TypeErrorKind k, std::string message, std::string actual = {}, std::string expected = {})
      : Error(std::move(message)), kind(k), actual(std::move(actual)), expected(std::move(expected)) {}

  TypeErrorKind kind;
  std::string actual;
  std::string expected;
};

class StepLimitExceeded : public Error {
 public:
  explicit StepLimitExceeded(std::size_t limit)
      : Error("reduction step limit of " + std::to_string(limit) + " exceeded"), limit(limit) {}
  std::size_t limit;
};

}  // namespace lpc
