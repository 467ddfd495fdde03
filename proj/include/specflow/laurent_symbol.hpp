#pragma once

#include <complex>
#include <map>

#include <Eigen/Dense>

namespace specflow {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Finitely supported Laurent polynomial with d x d matrix coefficients.
///
/// The coefficient at offset k sits on the k-th diagonal of the lattice
/// matrix: entry (m, n) with m - n = k. The left shift S|n> = |n-1> therefore
/// lives at offset -1. evaluate(theta) returns sum_k c_k e^{i k theta}, so the
/// symbol of S is e^{-i theta}.
class LaurentSymbol {
 public:
  LaurentSymbol() : LaurentSymbol(1) {}
  explicit LaurentSymbol(int fiber_dim);

  static LaurentSymbol identity(int fiber_dim);
  static LaurentSymbol constant(const Matrix& coefficient);
  static LaurentSymbol monomial(int offset, const Matrix& coefficient);
  /// S^power for power >= 0, (S*)^|power| for power < 0, tensored with 1_d.
  static LaurentSymbol shift(int power, int fiber_dim);

  int fiber_dim() const { return fiber_dim_; }
  int bandwidth() const;
  bool is_zero() const { return diagonals_.empty(); }
  /// Only the offset-0 coefficient is present.
  bool is_diagonal() const;

  const std::map<int, Matrix>& diagonals() const { return diagonals_; }
  /// nullptr when the offset carries no coefficient.
  const Matrix* find(int offset) const;
  Matrix coefficient(int offset) const;
  void set_coefficient(int offset, const Matrix& coefficient);

  Matrix evaluate(double theta) const;

  LaurentSymbol adjoint() const;
  LaurentSymbol transpose() const;
  LaurentSymbol conjugate() const;
  /// c'_k = c_{-k}; the symbol seen after reversing the lattice orientation.
  LaurentSymbol reflected() const;

  /// Sum of coefficient spectral norms, an upper bound on the operator norm.
  double norm_bound() const;
  /// Largest coefficient-wise spectral norm of the difference.
  double distance(const LaurentSymbol& other) const;

  friend LaurentSymbol operator+(const LaurentSymbol& a, const LaurentSymbol& b);
  friend LaurentSymbol operator-(const LaurentSymbol& a, const LaurentSymbol& b);
  /// Convolution, i.e. the symbol of the product of Laurent operators.
  friend LaurentSymbol operator*(const LaurentSymbol& a, const LaurentSymbol& b);
  friend LaurentSymbol operator*(Complex z, const LaurentSymbol& a);

 private:
  void prune();

  int fiber_dim_;
  std::map<int, Matrix> diagonals_;
};

}  // namespace specflow
