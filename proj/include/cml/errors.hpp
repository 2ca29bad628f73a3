#pragma once

#include <stdexcept>
#include <string>

namespace cml {

enum class ErrorKind {
  ZeroInput,
  DivisibleByLambda,
  DivisionByZero,
  BothZero,
  Overflow,
  NotPrime,
  NotPrimaryPrime,
  BadModulus,
  CapExceeded,
  NotSplit,
  NotInFamily,
  QuadratureNotConverged,
  OutOfStrip,
  DivergentArgument,
  RamifiedPrime,
  ThetaOutOfRange,
  CacheMismatch,
  Config,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cml
