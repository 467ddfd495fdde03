#pragma once

#include <cstdint>

#include "specflow/lattice_operator.hpp"
#include "specflow/tolerances.hpp"

namespace specflow {

/// F = 2 Pi Pi* - 1 on the folded space: +1 on copy 1 (sites >= 0), -1 on
/// copy 2 (sites < 0).
LatticeOperator dilation_grading(int fiber_dim);

/// fold([[T, (1 - TT*)^1/2], [(1 - T*T)^1/2, -T*]]).
LatticeOperator halmos_dilation(const LatticeOperator& t, double tol = tol::kStructural);

struct PolarDecomposition {
  LatticeOperator isometry;  // V, partial isometry with Ker V = Ker T
  LatticeOperator modulus;   // |T| = (T*T)^1/2
};

PolarDecomposition polar_decomposition(const LatticeOperator& t);

/// Halmos dilation of the polar isometry V of T.
LatticeOperator polar_isometry_dilation(const LatticeOperator& t, double tol = tol::kStructural);

struct RandomizedDilationOptions {
  /// Number of copy-2 sites the rotations act on; <= 0 picks window + 8.
  long block_sites = 0;
  bool rotate_left = true;
  bool rotate_right = true;
};

/// diag(1, W1) U^H diag(1, W2) with Haar rotations W1, W2 on a block of
/// copy-2 sites.
LatticeOperator randomized_dilation(const LatticeOperator& t, std::uint64_t seed,
                                    const RandomizedDilationOptions& options = {},
                                    double tol = tol::kStructural);

/// Odd symmetric unitary dilation of diag(S, S*) on fiber 2, with
/// B = [[0, 0], [0, P]], C = [[P, 0], [0, 0]], D = diag(-S*, -S) and
/// P = 1 - S*S.
LatticeOperator odd_symmetric_dilation_U0();

struct DilationReport {
  double compression_residual = 0.0;
  double unitarity_defect = 0.0;
  bool off_diagonal_finite = false;
  bool passed = false;
};

DilationReport validate_dilation(const LatticeOperator& u, const LatticeOperator& t,
                                 double tol = tol::kStructural);

}  // namespace specflow
