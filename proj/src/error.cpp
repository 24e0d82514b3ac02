#include "veq/error.hpp"

namespace veq {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotParallel: return "NotParallel";
    case ErrorKind::EmptyList: return "EmptyList";
    case ErrorKind::CodMismatch: return "CodMismatch";
    case ErrorKind::TargetMismatch: return "TargetMismatch";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::SourceMismatch: return "SourceMismatch";
    case ErrorKind::CapabilityMissing: return "CapabilityMissing";
    case ErrorKind::BudgetInvalid: return "BudgetInvalid";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::SignatureMismatch: return "SignatureMismatch";
    case ErrorKind::CarrierTooLarge: return "CarrierTooLarge";
    case ErrorKind::BoundsTooLarge: return "BoundsTooLarge";
    case ErrorKind::ElementNotInG: return "ElementNotInG";
    case ErrorKind::AdjunctionInvalid: return "AdjunctionInvalid";
    case ErrorKind::DepthTooSmall: return "DepthTooSmall";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::AllZeroCoefficients: return "AllZeroCoefficients";
    case ErrorKind::InternalEquivalenceViolation: return "InternalEquivalenceViolation";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ResolutionError: return "ResolutionError";
    case ErrorKind::InvariantError: return "InvariantError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace veq
