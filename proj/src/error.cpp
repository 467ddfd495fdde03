#include "specflow/error.hpp"

namespace specflow {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::DomainMismatch: return "domain mismatch";
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::NotSelfAdjoint: return "not self-adjoint";
    case ErrorCode::NotProjection: return "not a projection";
    case ErrorCode::NotUnitary: return "not unitary";
    case ErrorCode::NotContraction: return "not a contraction";
    case ErrorCode::NotEssentiallyUnitary: return "not essentially unitary";
    case ErrorCode::IllConditionedKernel: return "ill-conditioned kernel";
    case ErrorCode::GapInEssentialSpectrum: return "gap intersects essential spectrum";
    case ErrorCode::ConvergenceFailure: return "convergence failure";
    case ErrorCode::UnresolvedCollision: return "unresolved eigenvalue collision";
    case ErrorCode::SymmetryViolation: return "symmetry violation";
    case ErrorCode::Io: return "i/o failure";
  }
  return "unknown error";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace specflow
