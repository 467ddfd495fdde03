#pragma once

namespace specflow::tol {

// Unitarity, symmetry flags, dilation residuals.
inline constexpr double kStructural = 1e-10;
// Eigenvalue convergence and the numerical zero used by the flow counter.
inline constexpr double kEigenvalue = 1e-9;
// Rank decisions, relative to the operator norm.
inline constexpr double kRank = 1e-8;
// Entries below this are dropped when windows are trimmed.
inline constexpr double kChop = 1e-14;
// Circle samples for symbol-based essential spectrum checks.
inline constexpr int kSymbolSamples = 1024;

}  // namespace specflow::tol
