#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace veq {

enum class ErrorKind {
  NotParallel,
  EmptyList,
  CodMismatch,
  TargetMismatch,
  DomainMismatch,
  SourceMismatch,
  CapabilityMissing,
  BudgetInvalid,
  UnboundVariable,
  SignatureMismatch,
  CarrierTooLarge,
  BoundsTooLarge,
  ElementNotInG,
  AdjunctionInvalid,
  DepthTooSmall,
  PrecisionExhausted,
  AllZeroCoefficients,
  InternalEquivalenceViolation,
  ParseError,
  ResolutionError,
  InvariantError,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI exit-code mapping) can dispatch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), detail_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace veq
