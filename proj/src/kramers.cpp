#include "specflow/kramers.hpp"

#include <algorithm>

#include "specflow/error.hpp"
#include "specflow/spectrum.hpp"

namespace specflow {

KramersReport kramers_check(const LatticeOperator& o, const LatticeOperator& v, double tol) {
  KramersReport report;
  report.relation_residual = distance(o * v, v * conjugate(o));
  // +-1 belong to the essential spectrum; keep them out of the count.
  const DiscreteSpectrum spec =
      discrete_spectrum(o, -1.0 + tol::kEigenvalue, 1.0 - tol::kEigenvalue);
  const SiteInterval rows = spec.sites.expanded(v.bandwidth() + 1).clipped_to(v.domain());
  const Matrix v_block = v.dense(rows, spec.sites);
  const long d = o.fiber_dim();
  const long offset = (spec.sites.lo - rows.lo) * d;
  for (const DiscreteEigenvalue& ev : spec.eigenvalues) {
    report.eigenvalues.push_back(ev.value);
    report.multiplicities.push_back(ev.multiplicity);
    if (ev.multiplicity % 2 != 0) report.all_even = false;
    Matrix basis = Matrix::Zero(rows.size() * d, ev.multiplicity);
    basis.middleRows(offset, ev.vectors.rows()) = ev.vectors;
    for (Eigen::Index k = 0; k < ev.vectors.cols(); ++k) {
      const Vector partner = v_block * ev.vectors.col(k).conjugate();
      const Vector psi = basis.col(k);
      report.pairing_residual = std::max(report.pairing_residual, std::abs(psi.dot(partner)));
      const Vector outside = partner - basis * (basis.adjoint() * partner);
      report.partner_residual = std::max(report.partner_residual, outside.norm());
    }
  }
  report.passed = report.relation_residual <= tol && report.all_even &&
                  report.pairing_residual <= tol && report.partner_residual <= tol;
  return report;
}

LatticeOperator kramers_partner(const OperatorPath& path, double s) {
  if (path.tag != PathTag::Odd || !path.companion || !path.context) {
    throw Error(ErrorCode::SymmetryViolation, "Kramers partner needs an odd-tag path");
  }
  const LatticeOperator& u = *path.companion;
  const LatticeOperator i_star =
      LatticeOperator::fiber_constant(path.context->I.adjoint(), u.domain());
  if (s == 0.0) return i_star;
  if (s == 0.5) return adjoint(u) * i_star;
  if (s == 1.0) return adjoint(u) * i_star * conjugate(u);
  throw Error(ErrorCode::InvalidArgument, "Kramers partner is defined at s = 0, 1/2, 1");
}

}  // namespace specflow
