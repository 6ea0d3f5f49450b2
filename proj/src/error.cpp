#include "projdim/error.hpp"

namespace projdim {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::KernelHit: return "KernelHit";
    case ErrorCode::DegenerateTopSingular: return "DegenerateTopSingular";
    case ErrorCode::ReducibleDirection: return "ReducibleDirection";
    case ErrorCode::AtKernel: return "AtKernel";
    case ErrorCode::BadCircle: return "BadCircle";
    case ErrorCode::DegenerateH: return "DegenerateH";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NonUnimodular: return "NonUnimodular";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::SOutOfRange: return "SOutOfRange";
    case ErrorCode::NotDecreasing: return "NotDecreasing";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::EmptyHistogram: return "EmptyHistogram";
    case ErrorCode::UnderResolved: return "UnderResolved";
    case ErrorCode::BadSpectrum: return "BadSpectrum";
    case ErrorCode::BadDet: return "BadDet";
    case ErrorCode::PingPongFail: return "PingPongFail";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::NonFinite:
    case ErrorCode::UnknownName:
    case ErrorCode::ConfigError:
    case ErrorCode::BadDet:
    case ErrorCode::PreconditionViolated:
      return false;
    default:
      return true;
  }
}

}  // namespace projdim
