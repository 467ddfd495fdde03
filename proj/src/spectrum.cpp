#include "specflow/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "specflow/error.hpp"

namespace specflow {

namespace {

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

Matrix apply_to_hermitian(const Matrix& m, const std::function<Complex(double)>& f) {
  if (m.size() == 0) return m;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(m));
  Vector fv(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < fv.size(); ++i) fv(i) = f(es.eigenvalues()(i));
  return es.eigenvectors() * fv.asDiagonal() * es.eigenvectors().adjoint();
}

LaurentSymbol apply_to_symbol(const LaurentSymbol& s, const std::function<Complex(double)>& f) {
  return LaurentSymbol::constant(apply_to_hermitian(s.coefficient(0), f));
}

double symbol_lipschitz(const LaurentSymbol& s) {
  double total = 0.0;
  for (const auto& [k, c] : s.diagonals()) {
    if (k == 0) continue;
    Eigen::JacobiSVD<Matrix> svd(c);
    total += std::abs(k) * svd.singularValues()(0);
  }
  return total;
}

std::vector<const LaurentSymbol*> essential_symbols(const LatticeOperator& op) {
  std::vector<const LaurentSymbol*> out{&op.right_background()};
  if (op.domain() == Domain::FullLine) out.push_back(&op.left_background());
  return out;
}

bool is_involution(const LaurentSymbol& s, double tol) {
  if (!s.is_diagonal()) return false;
  const Matrix c = s.coefficient(0);
  const Matrix id = Matrix::Identity(c.rows(), c.cols());
  return (c - c.adjoint()).norm() <= tol && (c * c - id).norm() <= tol;
}

// Groups sorted eigenvalues closer than tol into clusters.
std::vector<DiscreteEigenvalue> cluster(const Eigen::VectorXd& values, const Matrix& vectors,
                                        const std::vector<Eigen::Index>& chosen, double tol) {
  std::vector<DiscreteEigenvalue> out;
  std::size_t i = 0;
  while (i < chosen.size()) {
    std::size_t j = i + 1;
    while (j < chosen.size() && values(chosen[j]) - values(chosen[j - 1]) <= tol) ++j;
    DiscreteEigenvalue ev;
    ev.multiplicity = static_cast<int>(j - i);
    ev.vectors.resize(vectors.rows(), ev.multiplicity);
    double sum = 0.0;
    for (std::size_t k = i; k < j; ++k) {
      sum += values(chosen[k]);
      ev.vectors.col(static_cast<Eigen::Index>(k - i)) = vectors.col(chosen[k]);
    }
    ev.value = sum / ev.multiplicity;
    out.push_back(std::move(ev));
    i = j;
  }
  return out;
}

DiscreteSpectrum solve_window(const LatticeOperator& op, double lo, double hi, double tol,
                              long margin, bool drop_edge_states) {
  DiscreteSpectrum result;
  result.margin = margin;
  const Compression c = window_compression(op, margin);
  result.sites = c.sites;
  if (c.matrix.size() == 0) return result;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(c.matrix));
  const int d = op.fiber_dim();
  const long zone = std::max<long>(2, 2 * op.bandwidth()) * d;
  const long rows = c.matrix.rows();
  const bool low_edge_artificial = !(op.domain() == Domain::HalfLine && c.sites.lo == 0);
  std::vector<Eigen::Index> chosen;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lambda = es.eigenvalues()(i);
    if (lambda <= lo || lambda >= hi) continue;
    if (drop_edge_states) {
      const auto v = es.eigenvectors().col(i);
      const long z = std::min(zone, rows);
      double edge = v.tail(z).squaredNorm();
      if (low_edge_artificial) edge += v.head(z).squaredNorm();
      if (edge > 1e-4) continue;
    }
    chosen.push_back(i);
  }
  result.eigenvalues = cluster(es.eigenvalues(), es.eigenvectors(), chosen, tol);
  return result;
}

bool same_spectrum(const DiscreteSpectrum& a, const DiscreteSpectrum& b, double tol) {
  const std::vector<double> va = a.values();
  const std::vector<double> vb = b.values();
  if (va.size() != vb.size()) return false;
  for (std::size_t i = 0; i < va.size(); ++i) {
    if (std::abs(va[i] - vb[i]) > tol) return false;
  }
  return true;
}

constexpr long kMaxMargin = 2048;
constexpr double kRootFloor = 1e-13;

}  // namespace

bool is_self_adjoint(const LatticeOperator& op, double tol) {
  return distance(op, adjoint(op)) <= tol;
}

bool is_unitary(const LatticeOperator& op, double tol) {
  const LatticeOperator id = LatticeOperator::identity(op.fiber_dim(), op.domain());
  const LatticeOperator u_star = adjoint(op);
  return distance(u_star * op, id) <= tol && distance(op * u_star, id) <= tol;
}

bool is_projection(const LatticeOperator& op, double tol) {
  return is_self_adjoint(op, tol) && distance(op * op, op) <= tol;
}

LatticeOperator hermitian_function(const LatticeOperator& op,
                                   const std::function<Complex(double)>& f) {
  if (!op.has_diagonal_background()) {
    throw Error(ErrorCode::InvalidArgument,
                "matrix functions need offset-0 backgrounds");
  }
  const double scale = std::max(1.0, operator_norm(op));
  if (!is_self_adjoint(op, tol::kStructural * scale)) {
    throw Error(ErrorCode::NotSelfAdjoint, "matrix function of a non-self-adjoint operator");
  }
  const LaurentSymbol right = apply_to_symbol(op.right_background(), f);
  const LaurentSymbol left = op.domain() == Domain::FullLine
                                 ? apply_to_symbol(op.left_background(), f)
                                 : LaurentSymbol(op.fiber_dim());
  if (op.window().empty()) return LatticeOperator(op.domain(), left, right, {0, -1}, Matrix(0, 0));
  return LatticeOperator::from_dense(op.domain(), left, right, op.window(),
                                     apply_to_hermitian(op.dense(op.window()), f));
}

LatticeOperator positive_sqrt(const LatticeOperator& op) {
  // Round-off eigenvalues of size 1e-16 would turn into 1e-8 after the root.
  return hermitian_function(op, [](double x) {
    return Complex(x > kRootFloor ? std::sqrt(x) : 0.0);
  });
}

LatticeOperator spectral_projection(const LatticeOperator& op, double lo, double hi) {
  return hermitian_function(op, [lo, hi](double x) { return Complex(x > lo && x <= hi ? 1 : 0); });
}

std::vector<double> window_eigenvalues(const LatticeOperator& op, long margin) {
  const Compression c = window_compression(op, margin);
  if (c.matrix.size() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(c.matrix), Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

std::vector<double> essential_spectrum_samples(const LatticeOperator& op) {
  std::vector<double> out;
  for (const LaurentSymbol* s : essential_symbols(op)) {
    const int samples = s->is_diagonal() ? 1 : tol::kSymbolSamples;
    for (int i = 0; i < samples; ++i) {
      const double theta = 2.0 * std::numbers::pi * i / tol::kSymbolSamples;
      Eigen::SelfAdjointEigenSolver<Matrix> es(hermitize(s->evaluate(theta)),
                                               Eigen::EigenvaluesOnly);
      for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        out.push_back(es.eigenvalues()(k));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool gap_is_clear(const LatticeOperator& op, double lo, double hi) {
  double lipschitz = 0.0;
  for (const LaurentSymbol* s : essential_symbols(op)) {
    lipschitz = std::max(lipschitz, symbol_lipschitz(*s));
  }
  const double margin = lipschitz * std::numbers::pi / tol::kSymbolSamples;
  for (double lambda : essential_spectrum_samples(op)) {
    if (lambda > lo - margin && lambda < hi + margin) return false;
  }
  return true;
}

std::vector<double> DiscreteSpectrum::values() const {
  std::vector<double> out;
  for (const auto& ev : eigenvalues) {
    for (int k = 0; k < ev.multiplicity; ++k) out.push_back(ev.value);
  }
  return out;
}

int DiscreteSpectrum::total_multiplicity() const {
  int total = 0;
  for (const auto& ev : eigenvalues) total += ev.multiplicity;
  return total;
}

bool has_involutive_background(const LatticeOperator& op, double tol) {
  if (!is_involution(op.right_background(), tol)) return false;
  return op.domain() == Domain::HalfLine || is_involution(op.left_background(), tol);
}

DiscreteSpectrum discrete_spectrum(const LatticeOperator& op, double lo, double hi, double tol,
                                   long margin) {
  if (margin < 0) throw Error(ErrorCode::InvalidArgument, "margin must be non-negative");
  const double scale = std::max(1.0, operator_norm(op));
  if (!is_self_adjoint(op, tol::kStructural * scale)) {
    throw Error(ErrorCode::NotSelfAdjoint, "discrete_spectrum of a non-self-adjoint operator");
  }
  if (!gap_is_clear(op, lo, hi)) {
    throw Error(ErrorCode::GapInEssentialSpectrum, "interval meets the essential spectrum");
  }
  if (has_involutive_background(op) && lo >= -1.0 && hi <= 1.0) {
    DiscreteSpectrum exact = solve_window(op, lo, hi, tol, margin, false);
    exact.exact = true;
    return exact;
  }
  long m = std::max<long>(margin, 4 * (op.bandwidth() + 1));
  DiscreteSpectrum previous = solve_window(op, lo, hi, tol, m, true);
  while (m < kMaxMargin) {
    m *= 2;
    DiscreteSpectrum next = solve_window(op, lo, hi, tol, m, true);
    if (same_spectrum(previous, next, tol)) return next;
    previous = std::move(next);
  }
  throw Error(ErrorCode::ConvergenceFailure, "discrete spectrum did not stabilize");
}

Defects defect_operators(const LatticeOperator& t) {
  const int d = t.fiber_dim();
  const LatticeOperator id = LatticeOperator::identity(d, t.domain());
  const LatticeOperator t_star = adjoint(t);
  auto finite_part = [&](const LatticeOperator& k) {
    const double tail = k.left_background().norm_bound() + k.right_background().norm_bound();
    if (tail > tol::kStructural) {
      throw Error(ErrorCode::NotEssentiallyUnitary, "defect has a non-zero background");
    }
    return LatticeOperator::finite(d, t.domain(), k.window(), k.perturbation());
  };
  return Defects{finite_part(id - t_star * t), finite_part(id - t * t_star)};
}

}  // namespace specflow
