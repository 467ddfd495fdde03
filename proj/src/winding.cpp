#include "specflow/winding.hpp"

#include <cmath>
#include <numbers>

#include "specflow/error.hpp"
#include "specflow/spectrum.hpp"

namespace specflow {

namespace {

class PhaseTracker {
 public:
  PhaseTracker(const UnitaryPath& path, const WindingOptions& options)
      : path_(path), options_(options), reference_(adjoint(path.at(path.s_begin))) {}

  Complex det(double s) {
    ++evaluations_;
    const LatticeOperator w = reference_ * path_.at(s);
    const Matrix id = Matrix::Identity(w.fiber_dim(), w.fiber_dim());
    if (w.left_background().distance(LaurentSymbol::constant(id)) > tol::kStructural ||
        w.right_background().distance(LaurentSymbol::constant(id)) > tol::kStructural) {
      throw Error(ErrorCode::InvalidArgument, "unitary path deviates by more than a finite term");
    }
    if (w.window().empty()) return 1.0;
    const Matrix m = w.perturbation() + Matrix::Identity(w.perturbation().rows(),
                                                         w.perturbation().cols());
    const Complex d = m.determinant();
    if (std::abs(d) < tol::kRank) {
      throw Error(ErrorCode::NotUnitary, "determinant vanishes along the unitary path");
    }
    return d;
  }

  double phase(double s0, double s1, Complex d0, Complex d1, int depth) {
    const double step = std::arg(d1 / d0);
    const double mid = 0.5 * (s0 + s1);
    const Complex dm = det(mid);
    const double left = std::arg(dm / d0);
    const double right = std::arg(d1 / dm);
    if (std::abs(step) < std::numbers::pi / 2 &&
        std::abs(left + right - step) <= options_.consistency) {
      return left + right;
    }
    if (depth >= options_.max_depth) {
      throw Error(ErrorCode::ConvergenceFailure, "phase step stays at or above pi/2");
    }
    return phase(s0, mid, d0, dm, depth + 1) + phase(mid, s1, dm, d1, depth + 1);
  }

  int evaluations() const { return evaluations_; }

 private:
  const UnitaryPath& path_;
  WindingOptions options_;
  LatticeOperator reference_;
  int evaluations_ = 0;
};

}  // namespace

WindingReport winding_number(const UnitaryPath& path, const WindingOptions& options) {
  PhaseTracker tracker(path, options);
  const int n = std::max(1, options.initial_steps);
  double total = 0.0;
  double s_prev = path.s_begin;
  Complex d_prev = tracker.det(s_prev);
  for (int i = 1; i <= n; ++i) {
    const double s = path.s_begin + (path.s_end - path.s_begin) * i / n;
    const Complex d = tracker.det(s);
    total += tracker.phase(s_prev, s, d_prev, d, 0);
    s_prev = s;
    d_prev = d;
  }
  WindingReport report;
  report.raw = total / (2.0 * std::numbers::pi);
  report.winding = static_cast<int>(std::lround(report.raw));
  report.evaluations = tracker.evaluations();
  if (std::abs(report.raw - report.winding) > options.integrality) {
    throw Error(ErrorCode::ConvergenceFailure, "accumulated phase is not a multiple of 2 pi");
  }
  return report;
}

LatticeOperator phi_map(const LatticeOperator& f) {
  return hermitian_function(f, [](double x) {
    return std::exp(Complex(0.0, std::numbers::pi * (x + 1.0)));
  });
}

PhiReport phi_equivalence_check(const OperatorPath& path, const FlowOptions& options) {
  PhiReport report;
  report.flow = spectral_flow(path, options).flow;
  UnitaryPath upath{[&path](double s) { return phi_map(path.at(s)); }, options.s_begin,
                    options.s_end};
  report.winding = winding_number(upath).winding;
  report.agree = report.flow == report.winding;
  return report;
}

}  // namespace specflow
