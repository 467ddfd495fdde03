#pragma once

#include <functional>

#include "specflow/laurent_symbol.hpp"

namespace specflow {

enum class Domain { FullLine, HalfLine };

const char* to_string(Domain domain) noexcept;

/// Closed interval of lattice sites; hi < lo means empty.
struct SiteInterval {
  long lo = 0;
  long hi = -1;

  bool empty() const { return hi < lo; }
  long size() const { return empty() ? 0 : hi - lo + 1; }
  bool contains(long site) const { return site >= lo && site <= hi; }
  SiteInterval expanded(long by) const { return {lo - by, hi + by}; }
  SiteInterval clipped_to(Domain domain) const;

  static SiteInterval hull(const SiteInterval& a, const SiteInterval& b);

  friend bool operator==(const SiteInterval&, const SiteInterval&) = default;
};

/// Operator on l^2(Z) (x) C^d or l^2(N) (x) C^d of the form
///
///   row-split banded background + finite perturbation.
///
/// Row m < 0 reads its background from `left`, row m >= 0 from `right`
/// (entry (m, n) = c_{m-n}). The perturbation is a dense matrix on
/// window x window, fiber-blocked with index (site - lo) * d + fiber.
/// Half-line operators carry a zero left symbol and never touch sites < 0.
///
/// The class is closed under +, *, adjoint, transpose and conjugation, and
/// "compact" means "finite window" throughout the library.
class LatticeOperator {
 public:
  LatticeOperator(int fiber_dim, Domain domain);
  LatticeOperator(Domain domain, LaurentSymbol left, LaurentSymbol right, SiteInterval window,
                  Matrix perturbation);

  static LatticeOperator zero(int fiber_dim, Domain domain);
  static LatticeOperator identity(int fiber_dim, Domain domain);
  /// Same fiber matrix at every site.
  static LatticeOperator fiber_constant(const Matrix& m, Domain domain);
  /// Pure Laurent operator (the same symbol on both sides).
  static LatticeOperator laurent(const LaurentSymbol& symbol, Domain domain);
  /// Full-line operator with different backgrounds at the two ends.
  static LatticeOperator two_sided(const LaurentSymbol& left, const LaurentSymbol& right);
  /// Finite operator supported on window x window.
  static LatticeOperator finite(int fiber_dim, Domain domain, SiteInterval window,
                                const Matrix& values);
  /// Builds the operator whose entries on window x window are `values` and
  /// which coincides with the given background everywhere else.
  static LatticeOperator from_dense(Domain domain, const LaurentSymbol& left,
                                    const LaurentSymbol& right, SiteInterval window,
                                    const Matrix& values);

  int fiber_dim() const { return fiber_dim_; }
  Domain domain() const { return domain_; }
  const LaurentSymbol& left_background() const { return left_; }
  const LaurentSymbol& right_background() const { return right_; }
  const SiteInterval& window() const { return window_; }
  const Matrix& perturbation() const { return perturbation_; }
  int bandwidth() const;

  bool has_zero_background() const { return left_.is_zero() && right_.is_zero(); }
  bool has_diagonal_background() const { return left_.is_diagonal() && right_.is_diagonal(); }

  /// d x d matrix element <row| O |col>.
  Matrix block(long row, long col) const;
  Matrix background_block(long row, long col) const;

  /// Dense matrix of O restricted to rows x cols. Sites outside the domain
  /// contribute zero rows/columns.
  Matrix dense(const SiteInterval& rows, const SiteInterval& cols) const;
  Matrix dense(const SiteInterval& sites) const { return dense(sites, sites); }
  Matrix background_dense(const SiteInterval& rows, const SiteInterval& cols) const;

  /// window grown by margin + bandwidth on both sides, clipped to the domain.
  SiteInterval effective_sites(long margin) const;

 private:
  void validate() const;
  void trim();

  int fiber_dim_;
  Domain domain_;
  LaurentSymbol left_;
  LaurentSymbol right_;
  SiteInterval window_;
  Matrix perturbation_;
};

// Ring operations. All are exact within the class; cross terms of the two
// backgrounds near the split and the windows land in an enlarged window.
LatticeOperator operator+(const LatticeOperator& a, const LatticeOperator& b);
LatticeOperator operator-(const LatticeOperator& a, const LatticeOperator& b);
LatticeOperator operator*(const LatticeOperator& a, const LatticeOperator& b);
LatticeOperator operator*(Complex z, const LatticeOperator& a);
LatticeOperator operator-(const LatticeOperator& a);

enum class AlgebraKind { Add, Mul };
LatticeOperator algebra(const LatticeOperator& a, const LatticeOperator& b, AlgebraKind kind);

enum class StarKind { Adjoint, Transpose, Conjugate };
LatticeOperator star_op(const LatticeOperator& a, StarKind kind);
LatticeOperator adjoint(const LatticeOperator& a);
LatticeOperator transpose(const LatticeOperator& a);
LatticeOperator conjugate(const LatticeOperator& a);

LatticeOperator commutator(const LatticeOperator& a, const LatticeOperator& b);

/// diag(a, b) on the fiber C^{d_a} (+) C^{d_b}.
LatticeOperator fiber_direct_sum(const LatticeOperator& a, const LatticeOperator& b);
/// a (x) m on the fiber C^d (x) C^k, fiber index f * k + j.
LatticeOperator fiber_tensor(const LatticeOperator& a, const Matrix& m);

/// 2 x 2 block operator on K (+) K with K = l^2(N) (x) C^d.
struct BlockOperator {
  LatticeOperator a;  // K   -> K
  LatticeOperator b;  // K'  -> K
  LatticeOperator c;  // K   -> K'
  LatticeOperator d;  // K'  -> K'
};

/// Realizes l^2(N) (+) l^2(N) = l^2(Z): site n >= 0 carries copy-1 site n,
/// site -(n+1) carries copy-2 site n. Off-diagonal blocks must be finite.
LatticeOperator fold(const BlockOperator& blocks);
BlockOperator unfold(const LatticeOperator& op);

/// Finite reduction of an operator with its site map.
struct Compression {
  Matrix matrix;
  SiteInterval sites;
  int fiber_dim = 1;

  long site_of(Eigen::Index row) const { return sites.lo + row / fiber_dim; }
  int fiber_of(Eigen::Index row) const { return static_cast<int>(row % fiber_dim); }
};

Compression window_compression(const LatticeOperator& op, long margin);

/// max(spectral norm of the margin-(2 bw + 1) compression, sup of both
/// symbols over the circle); exact for zero-background operators.
double operator_norm(const LatticeOperator& op);
/// operator_norm(a - b).
double distance(const LatticeOperator& a, const LatticeOperator& b);

}  // namespace specflow
