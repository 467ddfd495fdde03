#include "specflow/dilation.hpp"

#include <cmath>

#include "specflow/error.hpp"
#include "specflow/rng.hpp"
#include "specflow/spectrum.hpp"

namespace specflow {

namespace {

void require_half_line(const LatticeOperator& t) {
  if (t.domain() != Domain::HalfLine) {
    throw Error(ErrorCode::DomainMismatch, "dilations take half-line contractions");
  }
}

void require_contraction(const Defects& defects, double tol) {
  for (const LatticeOperator* k : {&defects.left, &defects.right}) {
    if (k->window().empty()) continue;
    const Matrix& m = k->perturbation();
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol) {
      throw Error(ErrorCode::NotContraction, "operator norm exceeds 1");
    }
  }
}

LatticeOperator copy2_rotation(int d, long sites, const Matrix& w) {
  const Matrix id = Matrix::Identity(sites * d, sites * d);
  return LatticeOperator::identity(d, Domain::FullLine) +
         LatticeOperator::finite(d, Domain::FullLine, {-sites, -1}, w - id);
}

}  // namespace

LatticeOperator dilation_grading(int fiber_dim) {
  const Matrix id = Matrix::Identity(fiber_dim, fiber_dim);
  return LatticeOperator::two_sided(LaurentSymbol::constant(-id), LaurentSymbol::constant(id));
}

LatticeOperator halmos_dilation(const LatticeOperator& t, double tol) {
  require_half_line(t);
  const Defects defects = defect_operators(t);
  require_contraction(defects, tol);
  return fold(BlockOperator{t, positive_sqrt(defects.right), positive_sqrt(defects.left),
                            -adjoint(t)});
}

PolarDecomposition polar_decomposition(const LatticeOperator& t) {
  const Defects defects = defect_operators(t);
  const LatticeOperator gram =
      LatticeOperator::identity(t.fiber_dim(), t.domain()) - defects.left;
  const LatticeOperator inverse_root = hermitian_function(gram, [](double x) {
    return Complex(x > tol::kRank ? 1.0 / std::sqrt(x) : 0.0);
  });
  return PolarDecomposition{t * inverse_root, positive_sqrt(gram)};
}

LatticeOperator polar_isometry_dilation(const LatticeOperator& t, double tol) {
  require_half_line(t);
  require_contraction(defect_operators(t), tol);
  return halmos_dilation(polar_decomposition(t).isometry, tol);
}

LatticeOperator randomized_dilation(const LatticeOperator& t, std::uint64_t seed,
                                    const RandomizedDilationOptions& options, double tol) {
  LatticeOperator u = halmos_dilation(t, tol);
  const int d = t.fiber_dim();
  const long sites =
      options.block_sites > 0 ? options.block_sites : (t.window().empty() ? 0 : t.window().hi + 1) + 8;
  Rng rng(seed);
  const Matrix w1 = rng.haar_unitary(static_cast<int>(sites * d));
  const Matrix w2 = rng.haar_unitary(static_cast<int>(sites * d));
  if (options.rotate_left) u = copy2_rotation(d, sites, w1) * u;
  if (options.rotate_right) u = u * copy2_rotation(d, sites, w2);
  return u;
}

LatticeOperator odd_symmetric_dilation_U0() {
  const Domain half = Domain::HalfLine;
  const LaurentSymbol s = LaurentSymbol::shift(1, 1);
  const LaurentSymbol s_star = LaurentSymbol::shift(-1, 1);
  auto fiber2 = [](const LaurentSymbol& a, const LaurentSymbol& b) {
    LaurentSymbol out(2);
    for (int k = -1; k <= 1; ++k) {
      Matrix c = Matrix::Zero(2, 2);
      c(0, 0) = a.coefficient(k)(0, 0);
      c(1, 1) = b.coefficient(k)(0, 0);
      out.set_coefficient(k, c);
    }
    return out;
  };
  auto site0 = [&](int fiber) {
    Matrix m = Matrix::Zero(2, 2);
    m(fiber, fiber) = 1.0;
    return LatticeOperator::finite(2, half, {0, 0}, m);
  };
  const LatticeOperator t0 = LatticeOperator::laurent(fiber2(s, s_star), half);
  const LatticeOperator d0 = LatticeOperator::laurent(fiber2(Complex(-1.0) * s_star,
                                                             Complex(-1.0) * s), half);
  return fold(BlockOperator{t0, site0(1), site0(0), d0});
}

DilationReport validate_dilation(const LatticeOperator& u, const LatticeOperator& t, double tol) {
  DilationReport report;
  const LatticeOperator id = LatticeOperator::identity(u.fiber_dim(), u.domain());
  const LatticeOperator u_star = adjoint(u);
  report.unitarity_defect = std::max(distance(u_star * u, id), distance(u * u_star, id));
  const BlockOperator blocks = unfold(u);
  report.compression_residual = distance(blocks.a, t);
  report.off_diagonal_finite =
      blocks.b.has_zero_background() && blocks.c.has_zero_background();
  report.passed = report.unitarity_defect <= tol && report.compression_residual <= tol &&
                  report.off_diagonal_finite;
  return report;
}

}  // namespace specflow
