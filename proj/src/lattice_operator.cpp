#include "specflow/lattice_operator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "specflow/error.hpp"
#include "specflow/tolerances.hpp"

namespace specflow {

namespace {

// Sites whose rows change background (full line) or hit the truncation
// (half line).
SiteInterval split_region(Domain domain) {
  return domain == Domain::FullLine ? SiteInterval{-1, 0} : SiteInterval{0, 0};
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

void require_compatible(const LatticeOperator& a, const LatticeOperator& b) {
  if (a.fiber_dim() != b.fiber_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "operands have different fiber_dim");
  }
  if (a.domain() != b.domain()) {
    throw Error(ErrorCode::DomainMismatch, "operands live on different domains");
  }
}

// Perturbation of `op` placed into window x window of a larger interval.
Matrix embedded_perturbation(const LatticeOperator& op, const SiteInterval& window) {
  const int d = op.fiber_dim();
  Matrix out = Matrix::Zero(window.size() * d, window.size() * d);
  if (op.window().empty()) return out;
  const long offset = (op.window().lo - window.lo) * d;
  out.block(offset, offset, op.perturbation().rows(), op.perturbation().cols()) =
      op.perturbation();
  return out;
}

LatticeOperator from_block_function(Domain domain, const LaurentSymbol& left,
                                    const LaurentSymbol& right, SiteInterval window,
                                    const std::function<Matrix(long, long)>& entry) {
  window = window.clipped_to(domain);
  const int d = right.fiber_dim();
  Matrix values = Matrix::Zero(window.size() * d, window.size() * d);
  for (long m = window.lo; m <= window.hi; ++m) {
    for (long n = window.lo; n <= window.hi; ++n) {
      values.block((m - window.lo) * d, (n - window.lo) * d, d, d) = entry(m, n);
    }
  }
  return LatticeOperator::from_dense(domain, left, right, window, values);
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(m.adjoint() * m, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

double symbol_sup(const LaurentSymbol& s) {
  if (s.is_zero()) return 0.0;
  if (s.is_diagonal()) return spectral_norm(s.coefficient(0));
  double best = 0.0;
  for (int i = 0; i < tol::kSymbolSamples; ++i) {
    const double theta = 2.0 * std::numbers::pi * i / tol::kSymbolSamples;
    best = std::max(best, spectral_norm(s.evaluate(theta)));
  }
  return best;
}

}  // namespace

const char* to_string(Domain domain) noexcept {
  return domain == Domain::FullLine ? "full" : "half";
}

SiteInterval SiteInterval::clipped_to(Domain domain) const {
  if (domain == Domain::HalfLine && lo < 0) return {0, hi};
  return *this;
}

SiteInterval SiteInterval::hull(const SiteInterval& a, const SiteInterval& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

LatticeOperator::LatticeOperator(int fiber_dim, Domain domain)
    : fiber_dim_(fiber_dim),
      domain_(domain),
      left_(fiber_dim),
      right_(fiber_dim),
      perturbation_(0, 0) {}

LatticeOperator::LatticeOperator(Domain domain, LaurentSymbol left, LaurentSymbol right,
                                 SiteInterval window, Matrix perturbation)
    : fiber_dim_(right.fiber_dim()),
      domain_(domain),
      left_(std::move(left)),
      right_(std::move(right)),
      window_(window),
      perturbation_(std::move(perturbation)) {
  if (window_.empty()) {
    window_ = {0, -1};
    if (perturbation_.size() != 0) {
      throw Error(ErrorCode::DimensionMismatch, "empty window with non-empty perturbation");
    }
    perturbation_.resize(0, 0);
  }
  validate();
  trim();
}

void LatticeOperator::validate() const {
  if (left_.fiber_dim() != right_.fiber_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "left/right backgrounds differ in fiber_dim");
  }
  if (domain_ == Domain::HalfLine) {
    if (!left_.is_zero()) {
      throw Error(ErrorCode::InvalidArgument, "half-line operator with non-zero left background");
    }
    if (!window_.empty() && window_.lo < 0) {
      throw Error(ErrorCode::InvalidArgument, "half-line window reaches negative sites");
    }
  }
  const long n = window_.size() * fiber_dim_;
  if (perturbation_.rows() != n || perturbation_.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "perturbation does not match window x fiber");
  }
}

void LatticeOperator::trim() {
  if (window_.empty()) return;
  const int d = fiber_dim_;
  for (Eigen::Index i = 0; i < perturbation_.rows(); ++i) {
    for (Eigen::Index j = 0; j < perturbation_.cols(); ++j) {
      if (std::abs(perturbation_(i, j)) <= tol::kChop) perturbation_(i, j) = 0.0;
    }
  }
  long first = -1;
  long last = -1;
  for (long s = 0; s < window_.size(); ++s) {
    const bool row_nonzero = !perturbation_.middleRows(s * d, d).isZero(0.0);
    const bool col_nonzero = !perturbation_.middleCols(s * d, d).isZero(0.0);
    if (row_nonzero || col_nonzero) {
      if (first < 0) first = s;
      last = s;
    }
  }
  if (first < 0) {
    window_ = {0, -1};
    perturbation_.resize(0, 0);
    return;
  }
  if (first == 0 && last == window_.size() - 1) return;
  const long count = (last - first + 1) * d;
  Matrix sub = perturbation_.block(first * d, first * d, count, count);
  perturbation_ = std::move(sub);
  window_ = {window_.lo + first, window_.lo + last};
}

LatticeOperator LatticeOperator::zero(int fiber_dim, Domain domain) {
  return LatticeOperator(fiber_dim, domain);
}

LatticeOperator LatticeOperator::identity(int fiber_dim, Domain domain) {
  return fiber_constant(Matrix::Identity(fiber_dim, fiber_dim), domain);
}

LatticeOperator LatticeOperator::fiber_constant(const Matrix& m, Domain domain) {
  return laurent(LaurentSymbol::constant(m), domain);
}

LatticeOperator LatticeOperator::laurent(const LaurentSymbol& symbol, Domain domain) {
  LaurentSymbol left = domain == Domain::FullLine ? symbol : LaurentSymbol(symbol.fiber_dim());
  return LatticeOperator(domain, left, symbol, {0, -1}, Matrix(0, 0));
}

LatticeOperator LatticeOperator::two_sided(const LaurentSymbol& left, const LaurentSymbol& right) {
  return LatticeOperator(Domain::FullLine, left, right, {0, -1}, Matrix(0, 0));
}

LatticeOperator LatticeOperator::finite(int fiber_dim, Domain domain, SiteInterval window,
                                        const Matrix& values) {
  return LatticeOperator(domain, LaurentSymbol(fiber_dim), LaurentSymbol(fiber_dim), window,
                         values);
}

LatticeOperator LatticeOperator::from_dense(Domain domain, const LaurentSymbol& left,
                                            const LaurentSymbol& right, SiteInterval window,
                                            const Matrix& values) {
  LatticeOperator bg(domain, left, right, {0, -1}, Matrix(0, 0));
  Matrix pert = values - bg.background_dense(window, window);
  return LatticeOperator(domain, left, right, window, std::move(pert));
}

int LatticeOperator::bandwidth() const {
  return std::max(left_.bandwidth(), right_.bandwidth());
}

Matrix LatticeOperator::background_block(long row, long col) const {
  if (domain_ == Domain::HalfLine && (row < 0 || col < 0)) {
    return Matrix::Zero(fiber_dim_, fiber_dim_);
  }
  const LaurentSymbol& sym = row < 0 ? left_ : right_;
  return sym.coefficient(static_cast<int>(row - col));
}

Matrix LatticeOperator::block(long row, long col) const {
  Matrix out = background_block(row, col);
  if (window_.contains(row) && window_.contains(col)) {
    out += perturbation_.block((row - window_.lo) * fiber_dim_, (col - window_.lo) * fiber_dim_,
                               fiber_dim_, fiber_dim_);
  }
  return out;
}

Matrix LatticeOperator::background_dense(const SiteInterval& rows,
                                         const SiteInterval& cols) const {
  const int d = fiber_dim_;
  Matrix out = Matrix::Zero(rows.size() * d, cols.size() * d);
  for (long m = rows.lo; m <= rows.hi; ++m) {
    if (domain_ == Domain::HalfLine && m < 0) continue;
    const LaurentSymbol& sym = m < 0 ? left_ : right_;
    for (const auto& [k, c] : sym.diagonals()) {
      const long n = m - k;
      if (!cols.contains(n) || (domain_ == Domain::HalfLine && n < 0)) continue;
      out.block((m - rows.lo) * d, (n - cols.lo) * d, d, d) = c;
    }
  }
  return out;
}

Matrix LatticeOperator::dense(const SiteInterval& rows, const SiteInterval& cols) const {
  const int d = fiber_dim_;
  Matrix out = background_dense(rows, cols);
  if (window_.empty()) return out;
  const long r0 = std::max(rows.lo, window_.lo);
  const long r1 = std::min(rows.hi, window_.hi);
  const long c0 = std::max(cols.lo, window_.lo);
  const long c1 = std::min(cols.hi, window_.hi);
  if (r0 > r1 || c0 > c1) return out;
  out.block((r0 - rows.lo) * d, (c0 - cols.lo) * d, (r1 - r0 + 1) * d, (c1 - c0 + 1) * d) +=
      perturbation_.block((r0 - window_.lo) * d, (c0 - window_.lo) * d, (r1 - r0 + 1) * d,
                          (c1 - c0 + 1) * d);
  return out;
}

SiteInterval LatticeOperator::effective_sites(long margin) const {
  const SiteInterval base = window_.empty() ? SiteInterval{0, -1} : window_;
  return base.expanded(margin + bandwidth()).clipped_to(domain_);
}

LatticeOperator algebra(const LatticeOperator& a, const LatticeOperator& b, AlgebraKind kind) {
  require_compatible(a, b);
  const Domain domain = a.domain();
  if (kind == AlgebraKind::Add) {
    const SiteInterval w = SiteInterval::hull(a.window(), b.window());
    Matrix pert = embedded_perturbation(a, w) + embedded_perturbation(b, w);
    return LatticeOperator(domain, a.left_background() + b.left_background(),
                           a.right_background() + b.right_background(), w, std::move(pert));
  }

  const LaurentSymbol left = a.left_background() * b.left_background();
  const LaurentSymbol right = a.right_background() * b.right_background();
  const long bw = a.bandwidth() + b.bandwidth();
  SiteInterval core = SiteInterval::hull(a.window(), b.window());
  core = SiteInterval::hull(core, split_region(domain));
  // Rows that differ from the product background lie within a.bandwidth()
  // of the core; their non-zero columns within another bw.
  const SiteInterval result = core.expanded(2 * bw + 1).clipped_to(domain);
  const SiteInterval inner = result.expanded(bw).clipped_to(domain);
  Matrix values = a.dense(result, inner) * b.dense(inner, result);
  return LatticeOperator::from_dense(domain, left, right, result, values);
}

LatticeOperator operator+(const LatticeOperator& a, const LatticeOperator& b) {
  return algebra(a, b, AlgebraKind::Add);
}

LatticeOperator operator-(const LatticeOperator& a, const LatticeOperator& b) {
  return algebra(a, Complex(-1.0) * b, AlgebraKind::Add);
}

LatticeOperator operator*(const LatticeOperator& a, const LatticeOperator& b) {
  return algebra(a, b, AlgebraKind::Mul);
}

LatticeOperator operator*(Complex z, const LatticeOperator& a) {
  return LatticeOperator(a.domain(), z * a.left_background(), z * a.right_background(),
                         a.window(), z * a.perturbation());
}

LatticeOperator operator-(const LatticeOperator& a) { return Complex(-1.0) * a; }

LatticeOperator star_op(const LatticeOperator& a, StarKind kind) {
  if (kind == StarKind::Conjugate) {
    return LatticeOperator(a.domain(), a.left_background().conjugate(),
                           a.right_background().conjugate(), a.window(),
                           a.perturbation().conjugate());
  }
  // The reflected background is column-split; the difference to the row-split
  // representation sits within one bandwidth of the split.
  const SiteInterval w = SiteInterval::hull(a.window(), split_region(a.domain()))
                             .expanded(a.bandwidth() + 1)
                             .clipped_to(a.domain());
  const Matrix values = a.dense(w);
  if (kind == StarKind::Adjoint) {
    return LatticeOperator::from_dense(a.domain(), a.left_background().adjoint(),
                                       a.right_background().adjoint(), w, values.adjoint());
  }
  return LatticeOperator::from_dense(a.domain(), a.left_background().transpose(),
                                     a.right_background().transpose(), w, values.transpose());
}

LatticeOperator adjoint(const LatticeOperator& a) { return star_op(a, StarKind::Adjoint); }
LatticeOperator transpose(const LatticeOperator& a) { return star_op(a, StarKind::Transpose); }
LatticeOperator conjugate(const LatticeOperator& a) { return star_op(a, StarKind::Conjugate); }

LatticeOperator commutator(const LatticeOperator& a, const LatticeOperator& b) {
  return a * b - b * a;
}

LatticeOperator fiber_direct_sum(const LatticeOperator& a, const LatticeOperator& b) {
  if (a.domain() != b.domain()) {
    throw Error(ErrorCode::DomainMismatch, "direct sum of operators on different domains");
  }
  const int da = a.fiber_dim();
  const int db = b.fiber_dim();
  auto combine = [&](const LaurentSymbol& x, const LaurentSymbol& y) {
    LaurentSymbol out(da + db);
    std::map<int, bool> offsets;
    for (const auto& [k, c] : x.diagonals()) offsets[k] = true;
    for (const auto& [k, c] : y.diagonals()) offsets[k] = true;
    for (const auto& [k, unused] : offsets) {
      Matrix m = Matrix::Zero(da + db, da + db);
      m.topLeftCorner(da, da) = x.coefficient(k);
      m.bottomRightCorner(db, db) = y.coefficient(k);
      out.set_coefficient(k, m);
    }
    return out;
  };
  const SiteInterval w = SiteInterval::hull(a.window(), b.window());
  return from_block_function(a.domain(), combine(a.left_background(), b.left_background()),
                             combine(a.right_background(), b.right_background()), w,
                             [&](long m, long n) {
                               Matrix blk = Matrix::Zero(da + db, da + db);
                               blk.topLeftCorner(da, da) = a.block(m, n);
                               blk.bottomRightCorner(db, db) = b.block(m, n);
                               return blk;
                             });
}

LatticeOperator fiber_tensor(const LatticeOperator& a, const Matrix& m) {
  const int k = static_cast<int>(m.rows());
  auto lift = [&](const LaurentSymbol& s) {
    LaurentSymbol out(a.fiber_dim() * k);
    for (const auto& [off, c] : s.diagonals()) out.set_coefficient(off, kron(c, m));
    return out;
  };
  return LatticeOperator(a.domain(), lift(a.left_background()), lift(a.right_background()),
                         a.window(), kron(a.perturbation(), m));
}

LatticeOperator fold(const BlockOperator& blocks) {
  const int d = blocks.a.fiber_dim();
  for (const LatticeOperator* op : {&blocks.a, &blocks.b, &blocks.c, &blocks.d}) {
    if (op->domain() != Domain::HalfLine) {
      throw Error(ErrorCode::DomainMismatch, "fold expects half-line blocks");
    }
    if (op->fiber_dim() != d) {
      throw Error(ErrorCode::DimensionMismatch, "fold blocks differ in fiber_dim");
    }
  }
  if (!blocks.b.has_zero_background() || !blocks.c.has_zero_background()) {
    throw Error(ErrorCode::InvalidArgument, "off-diagonal fold blocks must be finite");
  }
  long reach = 0;
  int bw = 0;
  for (const LatticeOperator* op : {&blocks.a, &blocks.b, &blocks.c, &blocks.d}) {
    if (!op->window().empty()) reach = std::max(reach, op->window().hi);
    bw = std::max(bw, op->bandwidth());
  }
  reach += bw + 1;
  const SiteInterval w{-reach - 1, reach};
  return from_block_function(
      Domain::FullLine, blocks.d.right_background().reflected(), blocks.a.right_background(), w,
      [&](long m, long n) {
        if (m >= 0 && n >= 0) return blocks.a.block(m, n);
        if (m >= 0) return blocks.b.block(m, -n - 1);
        if (n >= 0) return blocks.c.block(-m - 1, n);
        return blocks.d.block(-m - 1, -n - 1);
      });
}

BlockOperator unfold(const LatticeOperator& op) {
  if (op.domain() != Domain::FullLine) {
    throw Error(ErrorCode::DomainMismatch, "unfold expects a full-line operator");
  }
  const int d = op.fiber_dim();
  long reach = 0;
  if (!op.window().empty()) reach = std::max(std::abs(op.window().lo), std::abs(op.window().hi));
  reach += op.bandwidth() + 1;
  const SiteInterval w{0, reach};
  const LaurentSymbol none(d);
  auto make = [&](const LaurentSymbol& right, auto entry) {
    return from_block_function(Domain::HalfLine, none, right, w, entry);
  };
  return BlockOperator{
      make(op.right_background(), [&](long m, long n) { return op.block(m, n); }),
      make(none, [&](long m, long n) { return op.block(m, -n - 1); }),
      make(none, [&](long m, long n) { return op.block(-m - 1, n); }),
      make(op.left_background().reflected(),
           [&](long m, long n) { return op.block(-m - 1, -n - 1); }),
  };
}

Compression window_compression(const LatticeOperator& op, long margin) {
  if (margin < 0) throw Error(ErrorCode::InvalidArgument, "margin must be non-negative");
  Compression c;
  c.sites = op.effective_sites(margin);
  c.fiber_dim = op.fiber_dim();
  c.matrix = op.dense(c.sites);
  return c;
}

double operator_norm(const LatticeOperator& op) {
  const Compression c = window_compression(op, op.bandwidth() + 1);
  return std::max({spectral_norm(c.matrix), symbol_sup(op.left_background()),
                   symbol_sup(op.right_background())});
}

double distance(const LatticeOperator& a, const LatticeOperator& b) {
  return operator_norm(a - b);
}

}  // namespace specflow
