#pragma once

#include "specflow/lattice_operator.hpp"
#include "specflow/rng.hpp"

namespace specflow::testing {

inline LatticeOperator bilateral_shift(int power, int d = 1) {
  return LatticeOperator::laurent(LaurentSymbol::shift(power, d), Domain::FullLine);
}

inline LatticeOperator half_shift(int power, int d = 1) {
  return LatticeOperator::laurent(LaurentSymbol::shift(power, d), Domain::HalfLine);
}

inline LaurentSymbol random_symbol(Rng& rng, int d, int bandwidth) {
  LaurentSymbol s(d);
  for (int k = -bandwidth; k <= bandwidth; ++k) s.set_coefficient(k, rng.gaussian(d, d));
  return s;
}

/// Generic member of the class: independent random backgrounds on both
/// sides plus a dense perturbation on `window`.
inline LatticeOperator random_operator(Rng& rng, int d, Domain domain, int bandwidth,
                                       SiteInterval window) {
  const LaurentSymbol right = random_symbol(rng, d, bandwidth);
  const LaurentSymbol left =
      domain == Domain::FullLine ? random_symbol(rng, d, bandwidth) : LaurentSymbol(d);
  const long n = window.size() * d;
  const Matrix base = LatticeOperator(domain, left, right, {0, -1}, Matrix(0, 0)).dense(window);
  return LatticeOperator::from_dense(domain, left, right, window, base + rng.gaussian(n, n));
}

/// Finite Hermitian operator on `window`.
inline LatticeOperator random_hermitian(Rng& rng, int d, Domain domain, SiteInterval window,
                                        double scale) {
  return LatticeOperator::finite(d, domain, window,
                                 rng.hermitian(static_cast<int>(window.size() * d), scale));
}

inline LatticeOperator grading(int d = 1) {
  const Matrix id = Matrix::Identity(d, d);
  return LatticeOperator::two_sided(LaurentSymbol::constant(-id), LaurentSymbol::constant(id));
}

}  // namespace specflow::testing
