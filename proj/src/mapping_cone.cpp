#include "specflow/mapping_cone.hpp"

#include <cmath>
#include <numbers>

#include "specflow/dilation.hpp"
#include "specflow/error.hpp"
#include "specflow/fredholm.hpp"
#include "specflow/spectral_flow.hpp"
#include "specflow/spectrum.hpp"
#include "specflow/winding.hpp"

namespace specflow {

namespace {

LatticeOperator identity_like(const LatticeOperator& a) {
  return LatticeOperator::identity(a.fiber_dim(), a.domain());
}

LatticeOperator grading_of(const LatticeOperator& p) {
  return Complex(2.0) * p - identity_like(p);
}

Matrix pauli(int k) {
  Matrix m = Matrix::Zero(2, 2);
  if (k == 1) {
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
  } else if (k == 2) {
    m(0, 1) = Complex(0.0, -1.0);
    m(1, 0) = Complex(0.0, 1.0);
  } else {
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
  }
  return m;
}

}  // namespace

LatticeOperator half_line_projection(int fiber_dim) {
  return LatticeOperator::two_sided(LaurentSymbol(fiber_dim),
                                    LaurentSymbol::identity(fiber_dim));
}

LatticeOperator lift_projection(const LatticeOperator& p, const LatticeOperator& f, double s) {
  const LatticeOperator id = identity_like(f);
  const LatticeOperator q = Complex(0.5) * (f + id);
  const LatticeOperator q_perp = id - q;
  const Complex phase = std::exp(Complex(0.0, std::numbers::pi * s));
  return q * p * q + phase * (q * p * q_perp) + std::conj(phase) * (q_perp * p * q) +
         q_perp * p * q_perp;
}

LatticeOperator lift_unitary(const LatticeOperator& u, const LatticeOperator& f, double s) {
  const LatticeOperator c = adjoint(u) * commutator(f, u);
  const LatticeOperator g = f - identity_like(f) + Complex(s) * c;
  const LatticeOperator e = hermitian_function(
      g, [](double x) { return std::exp(Complex(0.0, 0.5 * std::numbers::pi * x)); });
  return u * e * f;
}

LatticeOperator lift_unitary_v(const LatticeOperator& u, const LatticeOperator& f, double s) {
  return adjoint(u) * lift_unitary(u, f, s) * f;
}

LatticeOperator exp_map(const LatticeOperator& p, const LatticeOperator& f, double s) {
  const LatticeOperator x = p + Complex(s) * (adjoint(f) * commutator(p, f));
  return hermitian_function(
      x, [](double y) { return std::exp(Complex(0.0, 2.0 * std::numbers::pi * y)); });
}

ConeReport cone_membership(const std::function<LatticeOperator(double)>& path,
                           const std::vector<double>& grid, const LatticeOperator& w,
                           ConeTag tag, const std::optional<SymmetryContext>& ctx, double tol) {
  if (tag == ConeTag::RealI && (!ctx || !ctx->has_odd())) {
    throw Error(ErrorCode::SymmetryViolation, "real cone check needs an odd context");
  }
  ConeReport report;
  const LatticeOperator w_star = adjoint(w);
  const LatticeOperator a0 = path(0.0);
  report.boundary_residual = distance(a0, w_star * path(1.0) * w);
  for (double s : grid) {
    const LatticeOperator as = path(s);
    if (!(as - a0).has_zero_background()) report.finite_variation = false;
    if (tag == ConeTag::RealI) {
      const LatticeOperator i_op = LatticeOperator::fiber_constant(ctx->I, as.domain());
      const LatticeOperator lhs = adjoint(i_op) * conjugate(as) * i_op;
      report.reflection_residual =
          std::max(report.reflection_residual, distance(lhs, w_star * path(1.0 - s) * w));
    }
  }
  report.member = report.boundary_residual <= tol && report.finite_variation &&
                  report.reflection_residual <= tol;
  return report;
}

int odd_pairing_sign() {
  static const int sign = [] {
    const LatticeOperator shift =
        LatticeOperator::laurent(LaurentSymbol::shift(1, 1), Domain::FullLine);
    const LatticeOperator p = half_line_projection(1);
    const int index = fredholm_index(padded_compression(shift, p));
    const int flow = sf_pair(grading_of(p), shift);
    return index * flow;
  }();
  return sign;
}

OddPairing pairing_odd(const LatticeOperator& f, const LatticeOperator& u) {
  OddPairing out;
  const LatticeOperator p = Complex(0.5) * (f + identity_like(f));
  out.index = fredholm_index(padded_compression(u, p));
  out.flow = sf_pair(f, u);
  out.calibrated_sign = odd_pairing_sign();
  out.literal = out.index == out.flow;
  out.calibrated = out.index == out.calibrated_sign * out.flow;
  return out;
}

EvenPairing pairing_even(const LatticeOperator& p, const LatticeOperator& f) {
  EvenPairing out;
  out.index = fredholm_index(padded_compression(f, p));
  out.flow = sf_pair(grading_of(p), f);
  UnitaryPath path{[&](double s) { return exp_map(p, f, s); }, 0.0, 1.0};
  out.winding = winding_number(path).winding;
  out.flow_matches_winding = out.flow == out.winding;
  out.index_matches_flow = out.index == out.flow;
  return out;
}

int graded_pairing(const LatticeOperator& p_minus, const LatticeOperator& f,
                   const LatticeOperator& p_plus) {
  return compression_index(f, p_plus, p_minus);
}

Z2Pairing z2_pairing(const LatticeOperator& p, const LatticeOperator& f,
                     const SymmetryContext& ctx) {
  if (!is_odd_symmetric(p, ctx) || !is_odd_symmetric(f, ctx)) {
    throw Error(ErrorCode::SymmetryViolation, "Z2 pairing needs odd symmetric P and F");
  }
  Z2Pairing out;
  out.index = z2_index(padded_compression(f, p), ctx);
  out.flow = *z2_spectral_flow(grading_of(p), f, ctx).flow_mod2;
  out.agree = out.index == out.flow;
  return out;
}

GradedReport graded_module_check(const LatticeOperator& f,
                                 const std::vector<LatticeOperator>& samples, double tol) {
  GradedReport report;
  const LatticeOperator f_star = adjoint(f);
  const LatticeOperator re = Complex(0.5) * (f + f_star);
  const LatticeOperator im = Complex(0.0, -0.5) * (f - f_star);
  const LatticeOperator hat = fiber_tensor(re, pauli(1)) + fiber_tensor(im, pauli(2));
  const int d = f.fiber_dim();
  Matrix sigma3 = Matrix::Zero(2 * d, 2 * d);
  for (int i = 0; i < d; ++i) sigma3.block(2 * i, 2 * i, 2, 2) = pauli(3);
  const LatticeOperator gamma = LatticeOperator::fiber_constant(sigma3, f.domain());
  const LatticeOperator id = LatticeOperator::identity(2 * d, f.domain());
  report.gamma_square = distance(gamma * gamma, id);
  report.anticommutation = distance(gamma * hat * gamma, -hat);
  report.self_adjoint = distance(hat, adjoint(hat));
  report.unitarity = distance(hat * hat, id);
  for (const LatticeOperator& a : samples) {
    const LatticeOperator lifted = fiber_tensor(a, Matrix::Identity(2, 2));
    report.even_generators =
        std::max(report.even_generators, distance(gamma * lifted * gamma, lifted));
  }
  report.passed = report.gamma_square <= tol && report.anticommutation <= tol &&
                  report.self_adjoint <= tol && report.unitarity <= tol &&
                  report.even_generators <= tol;
  return report;
}

LatticeOperator siegel_sample(const LatticeOperator& a, const SymmetryContext& ctx) {
  if (!ctx.has_odd()) throw Error(ErrorCode::SymmetryViolation, "context has no odd structure");
  const LatticeOperator i_op = LatticeOperator::fiber_constant(ctx.I, a.domain());
  const LatticeOperator i_star = LatticeOperator::fiber_constant(ctx.I.adjoint(), a.domain());
  return i_star * transpose(a) * i_op * a;
}

}  // namespace specflow
