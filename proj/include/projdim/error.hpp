#pragma once

#include <stdexcept>
#include <string>

namespace projdim {

enum class ErrorCode {
  InvalidArgument,
  NonFinite,
  SingularMatrix,
  KernelHit,
  DegenerateTopSingular,
  ReducibleDirection,
  AtKernel,
  BadCircle,
  DegenerateH,
  PreconditionViolated,
  NonUnimodular,
  Overflow,
  SOutOfRange,
  NotDecreasing,
  NoBracket,
  EmptyHistogram,
  UnderResolved,
  BadSpectrum,
  BadDet,
  PingPongFail,
  UnknownName,
  ConfigError,
};

const char* to_string(ErrorCode code);

// Numerical failures map to CLI exit code 3, everything else to 2.
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace projdim
