#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "specflow/lattice_operator.hpp"
#include "specflow/symmetry.hpp"
#include "specflow/tolerances.hpp"

namespace specflow {

/// Projection onto sites >= 0 of the full line, tensored with 1_d.
LatticeOperator half_line_projection(int fiber_dim);

/// QPQ + e^{i pi s} QP(1-Q) + e^{-i pi s} (1-Q)PQ + (1-Q)P(1-Q), Q = (F+1)/2.
LatticeOperator lift_projection(const LatticeOperator& p, const LatticeOperator& f, double s);

/// U exp((i pi / 2)(F - 1 + s U*[F, U])) F.
LatticeOperator lift_unitary(const LatticeOperator& u, const LatticeOperator& f, double s);

/// V_s = U* Lift(U)_s F; runs from F to U*FU.
LatticeOperator lift_unitary_v(const LatticeOperator& u, const LatticeOperator& f, double s);

/// exp(2 pi i (P + s F*[P, F])).
LatticeOperator exp_map(const LatticeOperator& p, const LatticeOperator& f, double s);

enum class ConeTag { Complex, RealI };

struct ConeReport {
  double boundary_residual = 0.0;    // |A_0 - W* A_1 W|
  bool finite_variation = true;      // A_s - A_0 has zero background
  double reflection_residual = 0.0;  // RealI: |I* conj(A_s) I - W* A_{1-s} W|
  bool member = false;
};

/// Membership of a discretized path in the mapping cone of the unitary w.
ConeReport cone_membership(const std::function<LatticeOperator(double)>& path,
                           const std::vector<double>& grid, const LatticeOperator& w,
                           ConeTag tag, const std::optional<SymmetryContext>& ctx = std::nullopt,
                           double tol = tol::kStructural);

struct OddPairing {
  int index = 0;           // Ind(PUP) on Ran P
  int flow = 0;            // SF(F, U)
  int calibrated_sign = 0;
  bool literal = false;    // index == flow
  bool calibrated = false; // index == calibrated_sign * flow
};

/// Sign s with Ind(PSP) = s SF(2P - 1, S) for the bilateral shift S,
/// computed once per process.
int odd_pairing_sign();

OddPairing pairing_odd(const LatticeOperator& f, const LatticeOperator& u);

struct EvenPairing {
  int index = 0;    // Ind(PFP) on Ran P
  int flow = 0;     // SF(2P - 1, F)
  int winding = 0;  // Wind(s -> exp_map(P, F, s))
  bool flow_matches_winding = false;
  bool index_matches_flow = false;
};

EvenPairing pairing_even(const LatticeOperator& p, const LatticeOperator& f);

/// Ind(P_minus F P_plus); with P_minus = P_plus = P this is Ind(PFP).
int graded_pairing(const LatticeOperator& p_minus, const LatticeOperator& f,
                   const LatticeOperator& p_plus);

struct Z2Pairing {
  int index = 0;  // Ind_2(PFP)
  int flow = 0;   // SF_2(2P - 1, F)
  bool agree = false;
};

Z2Pairing z2_pairing(const LatticeOperator& p, const LatticeOperator& f,
                     const SymmetryContext& ctx);

struct GradedReport {
  double gamma_square = 0.0;      // |Gamma^2 - 1|
  double anticommutation = 0.0;   // |Gamma F^ Gamma + F^|
  double self_adjoint = 0.0;      // |F^ - F^*|
  double unitarity = 0.0;         // |F^2 - 1|
  double even_generators = 0.0;   // |Gamma A Gamma - A| over the samples
  bool passed = false;
};

/// F^ = Re(F) sigma_1 + Im(F) sigma_2 and Gamma = sigma_3 on the doubled
/// fiber; samples are lifted as a (x) 1_2.
GradedReport graded_module_check(const LatticeOperator& f,
                                 const std::vector<LatticeOperator>& samples = {},
                                 double tol = tol::kStructural);

/// I* A^t I A.
LatticeOperator siegel_sample(const LatticeOperator& a, const SymmetryContext& ctx);

}  // namespace specflow
