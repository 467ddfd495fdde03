#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specflow/operator_path.hpp"
#include "specflow/tolerances.hpp"

namespace specflow {

struct FlowOptions {
  double s_begin = 0.0;
  double s_end = 1.0;
  /// Bisection levels per initial interval; SPECFLOW_MAX_REFINE overrides.
  int max_refine = 14;
  /// Re-run on the doubled initial grid and require the same flow.
  bool verify_doubling = true;
  /// Eigenvalues at or below this count as non-positive.
  double zero_tol = tol::kEigenvalue;
};

/// Bin data of one segment [s0, s1] of the final partition.
struct FlowSegment {
  double s0 = 0.0;
  double s1 = 0.0;
  double a = -0.5;  // a_n < 0
  double b = 0.5;   // b_n > 0
  int count0 = 0;   // rank of chi_(a, 0](F_{s0})
  int count1 = 0;   // rank of chi_(a, 0](F_{s1})
};

struct CurveSample {
  double s = 0.0;
  std::vector<double> eigenvalues;  // discrete spectrum in (-1, 1)
};

struct FlowDiagnostics {
  int refinements = 0;
  int max_depth = 0;
  long max_window_sites = 0;
  double lipschitz = 0.0;
  std::optional<int> doubled_flow;
  std::vector<std::string> notes;
};

struct FlowReport {
  std::vector<double> partition;
  std::vector<FlowSegment> segments;
  std::vector<CurveSample> curves;
  int flow = 0;
  std::optional<int> flow_mod2;
  FlowDiagnostics diagnostics;
};

/// Phillips spectral flow sum_n [rank chi_(a_n,0](F_{s_{n-1}}) -
/// rank chi_(a_n,0](F_{s_n})]. Segments are bisected until a_n and b_n keep
/// a distance above lipschitz * h from the spectra at both segment ends,
/// which by Weyl's inequality rules out any crossing of a_n or b_n inside.
FlowReport spectral_flow(const OperatorPath& path, const FlowOptions& options = {});

/// Spectral flow of the canonical path of (F, U).
int sf_pair(const LatticeOperator& f, const LatticeOperator& u);

/// Ind(P(0), P(1)) for the non-positive spectral projections at the path ends.
int sf_via_pair_index(const OperatorPath& path);

/// Flow over [0, 1/2] of the canonical odd path, reduced mod 2.
FlowReport z2_spectral_flow(const LatticeOperator& f, const LatticeOperator& u,
                            const SymmetryContext& ctx);

/// Flow over [0, 1/2] of any odd-tag path, reduced mod 2.
FlowReport z2_flow_of_path(const OperatorPath& path, const FlowOptions& options = {});

/// Bisection cap honoring the SPECFLOW_MAX_REFINE environment variable.
int max_refine_from_env(int fallback);

}  // namespace specflow
