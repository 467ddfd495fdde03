#include "specflow/fredholm.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "specflow/error.hpp"
#include "specflow/spectrum.hpp"

namespace specflow {

namespace {

Eigen::VectorXd finite_eigenvalues(const LatticeOperator& k) {
  if (k.window().empty()) return {};
  const Matrix& m = k.perturbation();
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

void require_finite(const LatticeOperator& op, const char* what) {
  if (op.left_background().norm_bound() + op.right_background().norm_bound() >
      tol::kStructural) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " is not finite");
  }
}

}  // namespace

int kernel_dimension(const LatticeOperator& t, double tol) {
  const Defects defects = defect_operators(t);
  const double norm = operator_norm(t);
  const double band = tol * std::max(1.0, norm * norm);
  int count = 0;
  for (double lambda : finite_eigenvalues(defects.left)) {
    const double gap = 1.0 - lambda;
    if (gap <= band) {
      ++count;
    } else if (gap < 10.0 * band) {
      std::ostringstream msg;
      msg << "defect eigenvalue at distance " << gap << " from 1";
      throw Error(ErrorCode::IllConditionedKernel, msg.str());
    }
  }
  return count;
}

int fredholm_index(const LatticeOperator& t, double tol) {
  return kernel_dimension(t, tol) - kernel_dimension(adjoint(t), tol);
}

int z2_index(const LatticeOperator& t, const SymmetryContext& ctx, double tol) {
  if (!is_odd_symmetric(t, ctx, tol::kStructural * std::max(1.0, operator_norm(t)))) {
    throw Error(ErrorCode::SymmetryViolation, "z2_index needs an odd symmetric operator");
  }
  return kernel_dimension(t, tol) % 2;
}

PairIndexReport pair_index(const LatticeOperator& p, const LatticeOperator& q, double tol) {
  if (!is_projection(p) || !is_projection(q)) {
    throw Error(ErrorCode::NotProjection, "pair_index needs orthogonal projections");
  }
  const LatticeOperator diff = p - q;
  require_finite(diff, "P - Q");
  PairIndexReport report;
  for (double lambda : finite_eigenvalues(diff)) {
    const double to_plus = std::abs(lambda - 1.0);
    const double to_minus = std::abs(lambda + 1.0);
    if (to_plus <= tol) {
      ++report.plus;
    } else if (to_minus <= tol) {
      ++report.minus;
    } else {
      const double d = std::min(to_plus, to_minus);
      report.margin = std::min(report.margin, d);
      if (d < 10.0 * tol) {
        std::ostringstream msg;
        msg << "eigenvalue " << lambda << " of P - Q within 10 tol of +-1, not counted";
        report.diagnostics.push_back(msg.str());
      }
    }
  }
  report.index = report.plus - report.minus;
  return report;
}

int symbol_winding_oracle(const LatticeOperator& u, int samples) {
  const LaurentSymbol& s = u.right_background();
  auto det_at = [&](double theta) {
    const Complex det = s.evaluate(theta).determinant();
    if (std::abs(det) < tol::kRank) {
      throw Error(ErrorCode::NotEssentiallyUnitary, "symbol determinant vanishes on the circle");
    }
    return det;
  };
  for (int n = std::max(samples, 8); n <= (1 << 20); n *= 2) {
    double total = 0.0;
    bool fine = true;
    Complex previous = det_at(0.0);
    for (int i = 1; i <= n && fine; ++i) {
      const Complex current = det_at(2.0 * std::numbers::pi * i / n);
      const double step = std::arg(current / previous);
      fine = std::abs(step) < std::numbers::pi / 2;
      total += step;
      previous = current;
    }
    if (fine) return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
  }
  throw Error(ErrorCode::ConvergenceFailure, "symbol phase steps stay above pi/2");
}

LatticeOperator half_line_compression(const LatticeOperator& u) {
  if (u.domain() == Domain::HalfLine) return u;
  return unfold(u).a;
}

LatticeOperator padded_compression(const LatticeOperator& m, const LatticeOperator& p) {
  const LatticeOperator id = LatticeOperator::identity(m.fiber_dim(), m.domain());
  return p * m * p + (id - p);
}

int compression_index(const LatticeOperator& m, const LatticeOperator& p_in,
                      const LatticeOperator& p_out, double tol) {
  const LatticeOperator id = LatticeOperator::identity(m.fiber_dim(), m.domain());
  auto null_dimension = [&](const LatticeOperator& a, const LatticeOperator& p) {
    // a*a restricted to Ran p, padded to 1 + finite on the complement.
    const LatticeOperator gram = p * adjoint(a) * a * p + (id - p);
    const LatticeOperator deviation = id - gram;
    require_finite(deviation, "padded Gram operator");
    const double scale = std::max(1.0, operator_norm(gram));
    int count = 0;
    for (double lambda : finite_eigenvalues(deviation)) {
      if (1.0 - lambda <= tol * scale) ++count;
    }
    return count;
  };
  const LatticeOperator forward = p_out * m * p_in;
  return null_dimension(forward, p_in) - null_dimension(adjoint(forward), p_out);
}

}  // namespace specflow
