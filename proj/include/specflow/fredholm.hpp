#pragma once

#include <string>
#include <vector>

#include "specflow/lattice_operator.hpp"
#include "specflow/symmetry.hpp"
#include "specflow/tolerances.hpp"

namespace specflow {

/// dim ker T from the eigenvalue-1 multiplicity of the finite defect
/// K_L = 1 - T*T. Eigenvalues within tol * max(1, |T|^2) of 1 count; one in
/// the band (1 - 10 tol, 1 - tol) raises IllConditionedKernel.
int kernel_dimension(const LatticeOperator& t, double tol = tol::kRank);

/// dim ker T - dim ker T*.
int fredholm_index(const LatticeOperator& t, double tol = tol::kRank);

/// dim ker T mod 2 for odd symmetric T.
int z2_index(const LatticeOperator& t, const SymmetryContext& ctx, double tol = tol::kRank);

struct PairIndexReport {
  int index = 0;
  /// dim ker(P - Q - 1) = dim(Ran P cap Ker Q).
  int plus = 0;
  /// dim ker(P - Q + 1) = dim(Ran Q cap Ker P).
  int minus = 0;
  /// Smallest distance of an uncounted eigenvalue of P - Q to +-1.
  double margin = 1.0;
  std::vector<std::string> diagnostics;
};

/// Index of the pair (P, Q): index of QP as a map Ran P -> Ran Q, read off
/// from the +-1 eigenvalues of the finite operator P - Q. Eigenvalues
/// within tol of +-1 count; near-ties are logged and not counted.
PairIndexReport pair_index(const LatticeOperator& p, const LatticeOperator& q,
                           double tol = tol::kRank);

/// Winding number of det(symbol) of the right background over the circle,
/// by phase accumulation with per-step increments kept below pi/2.
/// Equals -Ind(PUP) for the half-line compression.
int symbol_winding_oracle(const LatticeOperator& u, int samples = tol::kSymbolSamples);

/// The half-line operator PUP (top-left block of unfold(u)).
LatticeOperator half_line_compression(const LatticeOperator& u);

/// M restricted to Ran P as a map into Ran P, padded by 1 - P so that the
/// index of the result is the index of the compression.
LatticeOperator padded_compression(const LatticeOperator& m, const LatticeOperator& p);

/// Index of P_out M P_in as a map Ran P_in -> Ran P_out, from the kernels
/// of P_in M* P_out M P_in + 1 - P_in and its partner on Ran P_out.
int compression_index(const LatticeOperator& m, const LatticeOperator& p_in,
                      const LatticeOperator& p_out, double tol = tol::kRank);

}  // namespace specflow
