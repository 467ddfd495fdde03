#include <doctest.h>

#include "specflow/corpus.hpp"
#include "specflow/dilation.hpp"
#include "specflow/error.hpp"
#include "specflow/operator_path.hpp"
#include "specflow/spectral_flow.hpp"
#include "specflow/spectrum.hpp"
#include "specflow/symmetry.hpp"
#include "support.hpp"

using namespace specflow;
using namespace specflow::testing;

namespace {

int rank_of(const LatticeOperator& op) {
  if (op.window().empty()) return 0;
  Eigen::JacobiSVD<Matrix> svd(op.dense(op.window()));
  int r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
    r += svd.singularValues()(i) > 1e-10 ? 1 : 0;
  }
  return r;
}

LatticeOperator site_projector(int d, int fiber, long site = 0) {
  Matrix m = Matrix::Zero(d, d);
  m(fiber, fiber) = 1.0;
  return LatticeOperator::finite(d, Domain::HalfLine, {site, site}, m);
}

}  // namespace

TEST_CASE("Halmos dilation of the identity") {
  const LatticeOperator one = LatticeOperator::identity(1, Domain::HalfLine);
  const LatticeOperator zero = LatticeOperator::zero(1, Domain::HalfLine);
  const LatticeOperator u = halmos_dilation(one);
  CHECK(distance(u, fold({one, zero, zero, Complex(-1.0) * one})) == 0.0);
  const DilationReport r = validate_dilation(u, one);
  CHECK(r.passed);
  CHECK(r.compression_residual == 0.0);
}

TEST_CASE("Halmos dilation of the shift") {
  const LatticeOperator s = half_shift(1);
  const LatticeOperator u = halmos_dilation(s);
  const DilationReport r = validate_dilation(u, s);
  CHECK(r.passed);
  CHECK(r.unitarity_defect < 1e-12);
  CHECK(r.compression_residual < 1e-12);
  const BlockOperator blocks = unfold(u);
  CHECK(rank_of(blocks.b) == 0);  // 1 - SS* = 0
  CHECK(rank_of(blocks.c) == 1);  // 1 - S*S = |0><0|
  CHECK(is_unitary(u, 1e-10));
}

TEST_CASE("validation catches a wrong compression") {
  const DilationReport r =
      validate_dilation(LatticeOperator::identity(1, Domain::FullLine), half_shift(1));
  CHECK_FALSE(r.passed);
  // |1 - S| = sup |1 - e^{-i theta}| = 2.
  CHECK(r.compression_residual == doctest::Approx(2.0));
}

TEST_CASE("dilation preconditions") {
  // (1 + P0/2) S has 1 - TT* = -5/4 on site 0.
  const LatticeOperator bump =
      LatticeOperator::identity(1, Domain::HalfLine) + Complex(0.5) * site_projector(1, 0);
  try {
    (void)halmos_dilation(bump * half_shift(1));
    FAIL("expected NotContraction");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotContraction);
  }
  try {
    (void)halmos_dilation(bilateral_shift(1));
    FAIL("expected DomainMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainMismatch);
  }
  Matrix half = Matrix::Identity(1, 1) * 0.5;
  try {
    (void)halmos_dilation(LatticeOperator::fiber_constant(half, Domain::HalfLine));
    FAIL("expected NotEssentiallyUnitary");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotEssentiallyUnitary);
  }
}

TEST_CASE("defect square roots") {
  const Corpus corpus = generate_corpus(60, 5, {CaseClass::Polar, CaseClass::Perturbed});
  for (const CorpusCase& c : corpus.cases) {
    const LatticeOperator t = build_contraction(c);
    const Defects d = defect_operators(t);
    for (const LatticeOperator* k : {&d.left, &d.right}) {
      const LatticeOperator root = positive_sqrt(*k);
      CHECK(distance(root * root, *k) < 1e-12);
      // The root vanishes wherever the defect does.
      if (k->window().empty()) CHECK(root.window().empty());
    }
  }
}

TEST_CASE("polar isometry dilation") {
  const LatticeOperator s = half_shift(1);
  CHECK(distance(polar_isometry_dilation(s), halmos_dilation(s)) < 1e-12);

  // T = S (1 - |1><1| / 2) has |T| = diag(0, 1/2, 1, 1, ...) and polar
  // factor S.
  const LatticeOperator one = LatticeOperator::identity(1, Domain::HalfLine);
  const LatticeOperator t = s * (one + Complex(-0.5) * site_projector(1, 0, 1));
  const LatticeOperator modulus =
      one - site_projector(1, 0) + Complex(-0.5) * site_projector(1, 0, 1);
  const PolarDecomposition pd = polar_decomposition(t);
  CHECK(distance(pd.isometry, s) < 1e-12);
  CHECK(distance(pd.modulus, modulus) < 1e-12);
  CHECK(distance(polar_isometry_dilation(t), halmos_dilation(s)) < 1e-12);

  // U(0)*[F, U(0)] = 2(-(1 - V*V) (+) (1 - VV*)).
  const Corpus corpus = generate_corpus(30, 9, {CaseClass::Polar, CaseClass::Perturbed});
  const LatticeOperator f = dilation_grading(1);
  for (const CorpusCase& c : corpus.cases) {
    const LatticeOperator v = polar_decomposition(build_contraction(c)).isometry;
    const LatticeOperator u0 = polar_isometry_dilation(build_contraction(c));
    const Defects dv = defect_operators(v);
    const LatticeOperator zero = LatticeOperator::zero(1, Domain::HalfLine);
    const LatticeOperator expected =
        Complex(2.0) * fold({Complex(-1.0) * dv.left, zero, zero, dv.right});
    CHECK(distance(adjoint(u0) * commutator(f, u0), expected) < 1e-10);
    CHECK(validate_dilation(u0, v).passed);
  }
}

TEST_CASE("randomized dilations") {
  const LatticeOperator s = half_shift(1);
  RandomizedDilationOptions none;
  none.rotate_left = false;
  none.rotate_right = false;
  CHECK(distance(randomized_dilation(s, 1, none), halmos_dilation(s)) == 0.0);

  const LatticeOperator f = dilation_grading(1);
  const Corpus corpus = generate_corpus(25, 13, {CaseClass::Polar, CaseClass::Perturbed});
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const LatticeOperator t = build_contraction(corpus.cases[seed % corpus.cases.size()]);
    const LatticeOperator u = randomized_dilation(t, seed);
    const DilationReport r = validate_dilation(u, t);
    CHECK(r.passed);
    CHECK(r.off_diagonal_finite);
    CHECK(commutator(f, u).has_zero_background());
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    CHECK(sf_pair(f, randomized_dilation(s, seed)) == -1);
  }
}

TEST_CASE("Halmos dilations of odd symmetric contractions stay odd symmetric") {
  const SymmetryContext ctx = SymmetryContext::canonical(2);
  const Corpus corpus = generate_corpus(30, 21, {CaseClass::Odd});
  for (const CorpusCase& c : corpus.cases) {
    const LatticeOperator t = build_contraction(c);
    REQUIRE(is_odd_symmetric(t, ctx));
    CHECK(is_odd_symmetric(halmos_dilation(t), ctx));
  }
}

TEST_CASE("the odd symmetric dilation U0") {
  const SymmetryContext ctx = SymmetryContext::canonical(2);
  const LatticeOperator u0 = odd_symmetric_dilation_U0();
  const LatticeOperator t_prime = fiber_direct_sum(half_shift(1), half_shift(-1));
  const DilationReport r = validate_dilation(u0, t_prime);
  CHECK(r.passed);
  CHECK(r.unitarity_defect <= 1e-12);
  CHECK(r.compression_residual == 0.0);
  CHECK(classify_symmetry(u0, ctx).has(SymmetryFlag::OddSymmetric));

  // U0*[F, U0] = diag(-2P, 0) on copy 1 and diag(0, 2P) on copy 2.
  const LatticeOperator f = dilation_grading(2);
  const BlockOperator c = unfold(adjoint(u0) * commutator(f, u0));
  CHECK(distance(c.a, Complex(-2.0) * site_projector(2, 0)) == 0.0);
  CHECK(distance(c.d, Complex(2.0) * site_projector(2, 1)) == 0.0);
  CHECK(c.b.window().empty());
  CHECK(c.c.window().empty());

  const FlowReport z2 = z2_spectral_flow(f, u0, ctx);
  REQUIRE(z2.flow_mod2.has_value());
  CHECK(*z2.flow_mod2 == 1);
}
