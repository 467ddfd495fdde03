#pragma once

#include <vector>

#include "specflow/lattice_operator.hpp"
#include "specflow/operator_path.hpp"

namespace specflow {

struct KramersReport {
  double relation_residual = 0.0;  // |O V - V conj(O)|
  std::vector<double> eigenvalues;
  std::vector<int> multiplicities;
  bool all_even = true;
  double pairing_residual = 0.0;   // max |<psi, V conj(psi)>|
  double partner_residual = 0.0;   // distance of V conj(psi) to the eigenspace
  bool passed = false;
};

/// Checks the even degeneracy of the discrete spectrum of O in (-1, 1)
/// forced by an anti-unitary V C with V conj(V) = -1 and O V = V conj(O).
KramersReport kramers_check(const LatticeOperator& o, const LatticeOperator& v,
                            double tol = 1e-8);

/// Unitary part V of the anti-unitary symmetry of F_s on an odd-tag path:
/// I* at s = 0, U*I* at s = 1/2, U*I* conj(U) at s = 1.
LatticeOperator kramers_partner(const OperatorPath& path, double s);

}  // namespace specflow
