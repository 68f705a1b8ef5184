#pragma once

#include <stdexcept>
#include <string>

namespace slprime {

enum class ErrorKind {
  NonMonotoneMesh,
  LengthMismatch,
  NonFiniteValue,
  DomainMismatch,
  OutOfDomain,
  InvalidInterval,
  InvalidBoundary,
  NotRightDefinite,
  EigenvalueNotFound,
  InsufficientData,
  NoRoot,
  LimitTooLarge,
  EpsilonOutOfRange,
  DegenerateModulus,
  InvalidArgument,
  BadConfig,
  UnknownCommand,
  IoFailure,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure in the library is reported as an Error carrying its kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace slprime
