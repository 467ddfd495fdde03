#pragma once

#include <stdexcept>
#include <string>

namespace specflow {

enum class ErrorCode {
  DimensionMismatch,
  DomainMismatch,
  InvalidArgument,
  NotSelfAdjoint,
  NotProjection,
  NotUnitary,
  NotContraction,
  NotEssentiallyUnitary,
  IllConditionedKernel,
  GapInEssentialSpectrum,
  ConvergenceFailure,
  UnresolvedCollision,
  SymmetryViolation,
  Io,
};

const char* to_string(ErrorCode code) noexcept;

/// Single exception type of the library; the code tells callers (and the CLI
/// exit-code contract) what went wrong.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace specflow
