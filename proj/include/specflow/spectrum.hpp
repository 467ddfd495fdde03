#pragma once

#include <functional>
#include <vector>

#include "specflow/lattice_operator.hpp"
#include "specflow/tolerances.hpp"

namespace specflow {

bool is_self_adjoint(const LatticeOperator& op, double tol = tol::kStructural);
bool is_unitary(const LatticeOperator& op, double tol = tol::kStructural);
bool is_projection(const LatticeOperator& op, double tol = tol::kStructural);

/// f(op) for self-adjoint op with offset-0 backgrounds. Such operators are
/// block diagonal (window | each outer site), so the result is exact.
LatticeOperator hermitian_function(const LatticeOperator& op,
                                   const std::function<Complex(double)>& f);
/// Square root; eigenvalues below 1e-13 (round-off) are sent to 0.
LatticeOperator positive_sqrt(const LatticeOperator& op);
/// chi_{(lo, hi]}(op).
LatticeOperator spectral_projection(const LatticeOperator& op, double lo, double hi);

/// Sorted eigenvalues of the margin compression of a self-adjoint operator.
std::vector<double> window_eigenvalues(const LatticeOperator& op, long margin = 0);

/// Eigenvalue curves of both backgrounds sampled on tol::kSymbolSamples
/// circle points.
std::vector<double> essential_spectrum_samples(const LatticeOperator& op);
/// True when (lo, hi) provably misses the essential spectrum: every sample
/// keeps a distance larger than the symbol Lipschitz constant times half the
/// sample spacing.
bool gap_is_clear(const LatticeOperator& op, double lo, double hi);

struct DiscreteEigenvalue {
  double value = 0.0;
  int multiplicity = 0;
  /// Orthonormal columns on `sites` of the owning DiscreteSpectrum.
  Matrix vectors;
};

struct DiscreteSpectrum {
  std::vector<DiscreteEigenvalue> eigenvalues;
  SiteInterval sites;
  long margin = 0;
  /// True when the exact-support lemma applied (diagonal +-1 backgrounds).
  bool exact = false;

  std::vector<double> values() const;
  int total_multiplicity() const;
};

/// Eigenvalues of a self-adjoint op inside the open interval (lo, hi).
/// Diagonal backgrounds with spectrum in {-1, +1} and (lo, hi) inside (-1, 1)
/// are handled exactly at the given margin; otherwise the margin is doubled
/// until the eigenvalues move less than tol.
DiscreteSpectrum discrete_spectrum(const LatticeOperator& op, double lo, double hi,
                                   double tol = tol::kEigenvalue, long margin = 0);

/// K_L = 1 - T*T and K_R = 1 - TT*, both finite.
struct Defects {
  LatticeOperator left;
  LatticeOperator right;
};

Defects defect_operators(const LatticeOperator& t);

/// True when both backgrounds are offset-0 Hermitian involutions.
bool has_involutive_background(const LatticeOperator& op, double tol = tol::kStructural);

}  // namespace specflow
