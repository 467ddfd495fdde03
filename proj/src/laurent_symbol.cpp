#include "specflow/laurent_symbol.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "specflow/error.hpp"
#include "specflow/tolerances.hpp"

namespace specflow {

namespace {

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

void require_same_dim(const LaurentSymbol& a, const LaurentSymbol& b) {
  if (a.fiber_dim() != b.fiber_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "symbol fiber dimensions differ");
  }
}

}  // namespace

LaurentSymbol::LaurentSymbol(int fiber_dim) : fiber_dim_(fiber_dim) {
  if (fiber_dim <= 0) throw Error(ErrorCode::InvalidArgument, "fiber_dim must be positive");
}

LaurentSymbol LaurentSymbol::identity(int fiber_dim) {
  return constant(Matrix::Identity(fiber_dim, fiber_dim));
}

LaurentSymbol LaurentSymbol::constant(const Matrix& coefficient) {
  return monomial(0, coefficient);
}

LaurentSymbol LaurentSymbol::monomial(int offset, const Matrix& coefficient) {
  if (coefficient.rows() != coefficient.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "symbol coefficient must be square");
  }
  LaurentSymbol s(static_cast<int>(coefficient.rows()));
  s.set_coefficient(offset, coefficient);
  return s;
}

LaurentSymbol LaurentSymbol::shift(int power, int fiber_dim) {
  return monomial(-power, Matrix::Identity(fiber_dim, fiber_dim));
}

int LaurentSymbol::bandwidth() const {
  int bw = 0;
  for (const auto& [k, c] : diagonals_) bw = std::max(bw, std::abs(k));
  return bw;
}

bool LaurentSymbol::is_diagonal() const {
  return diagonals_.empty() || (diagonals_.size() == 1 && diagonals_.begin()->first == 0);
}

const Matrix* LaurentSymbol::find(int offset) const {
  auto it = diagonals_.find(offset);
  return it == diagonals_.end() ? nullptr : &it->second;
}

Matrix LaurentSymbol::coefficient(int offset) const {
  if (const Matrix* c = find(offset)) return *c;
  return Matrix::Zero(fiber_dim_, fiber_dim_);
}

void LaurentSymbol::set_coefficient(int offset, const Matrix& coefficient) {
  if (coefficient.rows() != fiber_dim_ || coefficient.cols() != fiber_dim_) {
    throw Error(ErrorCode::DimensionMismatch, "coefficient does not match fiber_dim");
  }
  if (coefficient.cwiseAbs().maxCoeff() <= tol::kChop) {
    diagonals_.erase(offset);
  } else {
    diagonals_[offset] = coefficient;
  }
}

Matrix LaurentSymbol::evaluate(double theta) const {
  Matrix out = Matrix::Zero(fiber_dim_, fiber_dim_);
  for (const auto& [k, c] : diagonals_) {
    out += std::polar(1.0, k * theta) * c;
  }
  return out;
}

LaurentSymbol LaurentSymbol::adjoint() const {
  LaurentSymbol out(fiber_dim_);
  for (const auto& [k, c] : diagonals_) out.diagonals_[-k] = c.adjoint();
  return out;
}

LaurentSymbol LaurentSymbol::transpose() const {
  LaurentSymbol out(fiber_dim_);
  for (const auto& [k, c] : diagonals_) out.diagonals_[-k] = c.transpose();
  return out;
}

LaurentSymbol LaurentSymbol::conjugate() const {
  LaurentSymbol out(fiber_dim_);
  for (const auto& [k, c] : diagonals_) out.diagonals_[k] = c.conjugate();
  return out;
}

LaurentSymbol LaurentSymbol::reflected() const {
  LaurentSymbol out(fiber_dim_);
  for (const auto& [k, c] : diagonals_) out.diagonals_[-k] = c;
  return out;
}

double LaurentSymbol::norm_bound() const {
  double total = 0.0;
  for (const auto& [k, c] : diagonals_) total += spectral_norm(c);
  return total;
}

double LaurentSymbol::distance(const LaurentSymbol& other) const {
  require_same_dim(*this, other);
  double worst = 0.0;
  LaurentSymbol diff = *this - other;
  for (const auto& [k, c] : diff.diagonals_) worst = std::max(worst, spectral_norm(c));
  return worst;
}

void LaurentSymbol::prune() {
  for (auto it = diagonals_.begin(); it != diagonals_.end();) {
    if (it->second.cwiseAbs().maxCoeff() <= tol::kChop) {
      it = diagonals_.erase(it);
    } else {
      ++it;
    }
  }
}

LaurentSymbol operator+(const LaurentSymbol& a, const LaurentSymbol& b) {
  require_same_dim(a, b);
  LaurentSymbol out = a;
  for (const auto& [k, c] : b.diagonals_) {
    auto it = out.diagonals_.find(k);
    if (it == out.diagonals_.end()) {
      out.diagonals_[k] = c;
    } else {
      it->second += c;
    }
  }
  out.prune();
  return out;
}

LaurentSymbol operator-(const LaurentSymbol& a, const LaurentSymbol& b) {
  return a + Complex(-1.0) * b;
}

LaurentSymbol operator*(const LaurentSymbol& a, const LaurentSymbol& b) {
  require_same_dim(a, b);
  LaurentSymbol out(a.fiber_dim_);
  for (const auto& [i, ca] : a.diagonals_) {
    for (const auto& [j, cb] : b.diagonals_) {
      auto it = out.diagonals_.find(i + j);
      if (it == out.diagonals_.end()) {
        out.diagonals_[i + j] = ca * cb;
      } else {
        it->second += ca * cb;
      }
    }
  }
  out.prune();
  return out;
}

LaurentSymbol operator*(Complex z, const LaurentSymbol& a) {
  LaurentSymbol out = a;
  for (auto& [k, c] : out.diagonals_) c *= z;
  out.prune();
  return out;
}

}  // namespace specflow
