#include "specflow/symmetry.hpp"

#include "specflow/error.hpp"

namespace specflow {

SymmetryContext SymmetryContext::canonical(int fiber_dim) {
  SymmetryContext ctx;
  ctx.J = Matrix::Identity(fiber_dim, fiber_dim);
  if (fiber_dim % 2 == 0) {
    const int h = fiber_dim / 2;
    ctx.I = Matrix::Zero(fiber_dim, fiber_dim);
    ctx.I.topRightCorner(h, h) = -Matrix::Identity(h, h);
    ctx.I.bottomLeftCorner(h, h) = Matrix::Identity(h, h);
  }
  return ctx;
}

void SymmetryContext::validate() const {
  const int d = fiber_dim();
  const Matrix id = Matrix::Identity(d, d);
  auto real_orthogonal = [&](const Matrix& m) {
    return m.imag().isZero(0.0) && (m.adjoint() * m - id).norm() == 0.0;
  };
  if (!real_orthogonal(J) || (J * J - id).norm() != 0.0) {
    throw Error(ErrorCode::SymmetryViolation, "J must be real orthogonal with J^2 = 1");
  }
  if (has_odd()) {
    if (I.rows() != d || !real_orthogonal(I) || (I * I + id).norm() != 0.0) {
      throw Error(ErrorCode::SymmetryViolation, "I must be real orthogonal with I^2 = -1");
    }
  }
}

std::string SymmetryFlags::to_string() const {
  static constexpr std::pair<SymmetryFlag, const char*> kNames[] = {
      {SymmetryFlag::EvenReal, "even_real"},
      {SymmetryFlag::OddReal, "odd_real"},
      {SymmetryFlag::EvenSymmetric, "even_symmetric"},
      {SymmetryFlag::OddSymmetric, "odd_symmetric"},
  };
  std::string out;
  for (const auto& [flag, name] : kNames) {
    if (!has(flag)) continue;
    if (!out.empty()) out += ',';
    out += name;
  }
  return out;
}

LatticeOperator symmetry_image(const LatticeOperator& t, const SymmetryContext& ctx,
                               SymmetryFlag flag) {
  const bool odd = flag == SymmetryFlag::OddReal || flag == SymmetryFlag::OddSymmetric;
  if (odd && !ctx.has_odd()) {
    throw Error(ErrorCode::SymmetryViolation, "context has no odd structure");
  }
  if (ctx.fiber_dim() != t.fiber_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "symmetry context does not match fiber_dim");
  }
  const Matrix& m = odd ? ctx.I : ctx.J;
  const LatticeOperator outer = LatticeOperator::fiber_constant(m, t.domain());
  const LatticeOperator outer_star = LatticeOperator::fiber_constant(m.adjoint(), t.domain());
  const bool real = flag == SymmetryFlag::EvenReal || flag == SymmetryFlag::OddReal;
  return outer_star * (real ? conjugate(t) : transpose(t)) * outer;
}

SymmetryFlags classify_symmetry(const LatticeOperator& t, const SymmetryContext& ctx,
                                double tol) {
  SymmetryFlags flags;
  for (SymmetryFlag f : {SymmetryFlag::EvenReal, SymmetryFlag::OddReal,
                         SymmetryFlag::EvenSymmetric, SymmetryFlag::OddSymmetric}) {
    const bool odd = f == SymmetryFlag::OddReal || f == SymmetryFlag::OddSymmetric;
    if (odd && !ctx.has_odd()) continue;
    if (distance(symmetry_image(t, ctx, f), t) <= tol) flags.set(f);
  }
  return flags;
}

bool is_odd_symmetric(const LatticeOperator& t, const SymmetryContext& ctx, double tol) {
  return ctx.has_odd() && distance(symmetry_image(t, ctx, SymmetryFlag::OddSymmetric), t) <= tol;
}

}  // namespace specflow
