#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "specflow/lattice_operator.hpp"
#include "specflow/symmetry.hpp"

namespace specflow {

enum class PathTag { Plain, Odd };

/// Continuous path s -> F_s of self-adjoint operators on [0, 1], given by an
/// evaluator together with a Lipschitz bound |F_s - F_t| <= lipschitz |s - t|
/// that drives the refinement of the flow computation.
struct OperatorPath {
  std::function<LatticeOperator(double)> at;
  double lipschitz = 0.0;
  std::vector<double> grid;
  LatticeOperator base{1, Domain::FullLine};
  std::optional<LatticeOperator> companion;
  PathTag tag = PathTag::Plain;
  std::optional<SymmetryContext> context;

  std::vector<LatticeOperator> nodes() const;
};

std::vector<double> uniform_grid(int intervals);

/// F_s = F + s U*[F, U]. Odd-tag paths additionally require odd symmetric F
/// and U and always contain s = 1/2 as a node.
OperatorPath canonical_path(const LatticeOperator& f, const LatticeOperator& u, int intervals = 0,
                            PathTag tag = PathTag::Plain,
                            const std::optional<SymmetryContext>& ctx = std::nullopt);

/// Canonical path plus sin(pi s) K with a seeded finite Hermitian K; for the
/// odd tag K is symmetrized so that the reflection condition survives.
/// |K| = bump_norm, or a seeded value in [0.2, 0.8] when bump_norm < 0.
OperatorPath random_theta_path(const LatticeOperator& f, const LatticeOperator& u,
                               std::uint64_t seed, int intervals = 0,
                               PathTag tag = PathTag::Plain,
                               const std::optional<SymmetryContext>& ctx = std::nullopt,
                               double bump_norm = -1.0);

/// (IU)* X^t (IU); an involution for odd symmetric unitary U.
LatticeOperator odd_reflection(const LatticeOperator& x, const LatticeOperator& u,
                               const SymmetryContext& ctx);

struct PathCheck {
  double start_residual = 0.0;        // |F_0 - F|
  double end_residual = 0.0;          // |F_1 - U*FU|
  double self_adjoint_residual = 0.0;
  bool finite_deviation = true;       // F_s - F has zero background
  double reflection_residual = 0.0;   // odd tag: |F_{1-s} - (IU)*(F_s)^t(IU)|
  bool passed = false;
};

/// Checks the defining conditions of the path class at every grid node.
PathCheck check_path(const OperatorPath& path, double tol = 1e-10);

}  // namespace specflow
