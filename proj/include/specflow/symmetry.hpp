#pragma once

#include <string>

#include "specflow/lattice_operator.hpp"
#include "specflow/tolerances.hpp"

namespace specflow {

/// Real orthogonal fiber matrices J (J^2 = 1) and I (I^2 = -1). Complex
/// conjugation is entrywise in the lattice basis. I is empty for odd d.
struct SymmetryContext {
  Matrix J;
  Matrix I;

  /// J = 1 and I = [[0, -1], [1, 0]] (x) 1_{d/2}.
  static SymmetryContext canonical(int fiber_dim);

  int fiber_dim() const { return static_cast<int>(J.rows()); }
  bool has_odd() const { return I.size() != 0; }
  /// Throws SymmetryViolation if J or I break their defining identities.
  void validate() const;
};

enum class SymmetryFlag : unsigned {
  EvenReal = 1u << 0,
  OddReal = 1u << 1,
  EvenSymmetric = 1u << 2,
  OddSymmetric = 1u << 3,
};

struct SymmetryFlags {
  unsigned bits = 0;

  bool has(SymmetryFlag f) const { return (bits & static_cast<unsigned>(f)) != 0; }
  void set(SymmetryFlag f) { bits |= static_cast<unsigned>(f); }
  bool empty() const { return bits == 0; }
  /// Comma-separated flag names, e.g. "even_real,odd_symmetric".
  std::string to_string() const;

  friend bool operator==(const SymmetryFlags&, const SymmetryFlags&) = default;
};

/// J* conj(T) J, I* conj(T) I, J* T^t J, I* T^t I in that flag order.
LatticeOperator symmetry_image(const LatticeOperator& t, const SymmetryContext& ctx,
                               SymmetryFlag flag);

SymmetryFlags classify_symmetry(const LatticeOperator& t, const SymmetryContext& ctx,
                                double tol = tol::kStructural);

bool is_odd_symmetric(const LatticeOperator& t, const SymmetryContext& ctx,
                      double tol = tol::kStructural);

}  // namespace specflow
