#pragma once

#include <functional>

#include "specflow/lattice_operator.hpp"
#include "specflow/spectral_flow.hpp"

namespace specflow {

/// s -> U_s on [s_begin, s_end] with U_{s_begin}* U_s = 1 + finite.
struct UnitaryPath {
  std::function<LatticeOperator(double)> at;
  double s_begin = 0.0;
  double s_end = 1.0;
};

struct WindingOptions {
  int initial_steps = 16;
  int max_depth = 24;
  /// Half-step phases must reproduce the full step to this accuracy.
  double consistency = 1e-6;
  /// Distance of the accumulated phase / 2 pi to the nearest integer.
  double integrality = 1e-6;
};

struct WindingReport {
  int winding = 0;
  double raw = 0.0;
  int evaluations = 0;
};

/// Phase of det(U_{s_begin}* U_s) accumulated along the path; the
/// determinant is the exact Fredholm determinant of the finite deviation.
WindingReport winding_number(const UnitaryPath& path, const WindingOptions& options = {});

/// phi(F) = exp(i pi (F + 1)).
LatticeOperator phi_map(const LatticeOperator& f);

struct PhiReport {
  int flow = 0;
  int winding = 0;
  bool agree = false;
};

/// Spectral flow of the path against the winding of s -> phi(F_s).
PhiReport phi_equivalence_check(const OperatorPath& path, const FlowOptions& options = {});

}  // namespace specflow
