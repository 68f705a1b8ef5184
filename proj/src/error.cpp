#include "slprime/error.hpp"

namespace slprime {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonMonotoneMesh: return "NonMonotoneMesh";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::InvalidInterval: return "InvalidInterval";
    case ErrorKind::InvalidBoundary: return "InvalidBoundary";
    case ErrorKind::NotRightDefinite: return "NotRightDefinite";
    case ErrorKind::EigenvalueNotFound: return "EigenvalueNotFound";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::NoRoot: return "NoRoot";
    case ErrorKind::LimitTooLarge: return "LimitTooLarge";
    case ErrorKind::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case ErrorKind::DegenerateModulus: return "DegenerateModulus";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::BadConfig: return "BadConfig";
    case ErrorKind::UnknownCommand: return "UnknownCommand";
    case ErrorKind::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

}  // namespace slprime
