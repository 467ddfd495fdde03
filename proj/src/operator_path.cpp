#include "specflow/operator_path.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "specflow/error.hpp"
#include "specflow/rng.hpp"

namespace specflow {

namespace {

int default_intervals(double lipschitz, PathTag tag) {
  int n = std::max(8, static_cast<int>(std::ceil(8.0 * lipschitz)));
  if (tag == PathTag::Odd && n % 2 != 0) ++n;
  return n;
}

LatticeOperator commutator_term(const LatticeOperator& f, const LatticeOperator& u) {
  const LatticeOperator c = adjoint(u) * commutator(f, u);
  if (!c.has_zero_background()) {
    throw Error(ErrorCode::InvalidArgument, "[F, U] has a non-zero background");
  }
  return c;
}

void require_odd_pair(const LatticeOperator& f, const LatticeOperator& u,
                      const std::optional<SymmetryContext>& ctx) {
  if (!ctx || !ctx->has_odd()) {
    throw Error(ErrorCode::SymmetryViolation, "odd-tag path without an odd context");
  }
  if (!is_odd_symmetric(f, *ctx) || !is_odd_symmetric(u, *ctx)) {
    throw Error(ErrorCode::SymmetryViolation, "odd-tag path needs odd symmetric F and U");
  }
}

}  // namespace

std::vector<LatticeOperator> OperatorPath::nodes() const {
  std::vector<LatticeOperator> out;
  out.reserve(grid.size());
  for (double s : grid) out.push_back(at(s));
  return out;
}

std::vector<double> uniform_grid(int intervals) {
  if (intervals < 1) throw Error(ErrorCode::InvalidArgument, "grid needs at least one interval");
  std::vector<double> grid(intervals + 1);
  for (int i = 0; i <= intervals; ++i) grid[i] = static_cast<double>(i) / intervals;
  return grid;
}

LatticeOperator odd_reflection(const LatticeOperator& x, const LatticeOperator& u,
                               const SymmetryContext& ctx) {
  const LatticeOperator iu = LatticeOperator::fiber_constant(ctx.I, u.domain()) * u;
  return adjoint(iu) * transpose(x) * iu;
}

OperatorPath canonical_path(const LatticeOperator& f, const LatticeOperator& u, int intervals,
                            PathTag tag, const std::optional<SymmetryContext>& ctx) {
  if (tag == PathTag::Odd) require_odd_pair(f, u, ctx);
  const LatticeOperator c = commutator_term(f, u);
  OperatorPath path;
  path.lipschitz = operator_norm(c);
  path.at = [f, c](double s) { return f + Complex(s) * c; };
  if (intervals <= 0) intervals = default_intervals(path.lipschitz, tag);
  if (tag == PathTag::Odd && intervals % 2 != 0) ++intervals;
  path.grid = uniform_grid(intervals);
  path.base = f;
  path.companion = u;
  path.tag = tag;
  path.context = ctx;
  return path;
}

OperatorPath random_theta_path(const LatticeOperator& f, const LatticeOperator& u,
                               std::uint64_t seed, int intervals, PathTag tag,
                               const std::optional<SymmetryContext>& ctx, double bump_norm) {
  OperatorPath path = canonical_path(f, u, intervals, tag, ctx);
  const LatticeOperator c = commutator_term(f, u);
  Rng rng(seed);
  const SiteInterval support =
      SiteInterval::hull(c.window(), SiteInterval{-2, 1}).expanded(rng.integer(0, 2));
  const int d = f.fiber_dim();
  const int n = static_cast<int>(support.clipped_to(f.domain()).size()) * d;
  const double target = bump_norm >= 0.0 ? bump_norm : rng.uniform(0.2, 0.8);
  LatticeOperator k =
      LatticeOperator::finite(d, f.domain(), support.clipped_to(f.domain()), rng.hermitian(n, 1.0));
  if (tag == PathTag::Odd) k = k + odd_reflection(k, u, *ctx);
  const double norm = operator_norm(k);
  if (norm > 0.0) k = Complex(target / norm) * k;
  const double k_norm = norm > 0.0 ? target : 0.0;
  path.lipschitz += std::numbers::pi * k_norm;
  path.at = [f, c, k](double s) {
    return f + Complex(s) * c + Complex(std::sin(std::numbers::pi * s)) * k;
  };
  if (intervals <= 0) path.grid = uniform_grid(default_intervals(path.lipschitz, tag));
  return path;
}

PathCheck check_path(const OperatorPath& path, double tol) {
  PathCheck check;
  const LatticeOperator f = path.base;
  check.start_residual = distance(path.at(0.0), f);
  if (path.companion) {
    const LatticeOperator& u = *path.companion;
    check.end_residual = distance(path.at(1.0), adjoint(u) * f * u);
  }
  for (double s : path.grid) {
    const LatticeOperator fs = path.at(s);
    check.self_adjoint_residual = std::max(check.self_adjoint_residual, distance(fs, adjoint(fs)));
    const LatticeOperator dev = fs - f;
    if (!dev.has_zero_background()) check.finite_deviation = false;
    if (path.tag == PathTag::Odd && path.companion && path.context) {
      const LatticeOperator mirrored = odd_reflection(fs, *path.companion, *path.context);
      check.reflection_residual =
          std::max(check.reflection_residual, distance(path.at(1.0 - s), mirrored));
    }
  }
  check.passed = check.start_residual <= tol && check.end_residual <= tol &&
                 check.self_adjoint_residual <= tol && check.finite_deviation &&
                 check.reflection_residual <= tol;
  return check;
}

}  // namespace specflow
