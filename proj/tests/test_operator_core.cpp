#include <doctest.h>

#include <cmath>

#include "specflow/error.hpp"
#include "specflow/mapping_cone.hpp"
#include "specflow/serialization.hpp"
#include "specflow/spectrum.hpp"
#include "specflow/symmetry.hpp"
#include "support.hpp"

using namespace specflow;
using namespace specflow::testing;

namespace {

// Rows/cols of a product restricted to `sites`, computed from operand blocks
// that see every intermediate site the band can reach.
Matrix dense_product(const LatticeOperator& a, const LatticeOperator& b, SiteInterval sites) {
  const SiteInterval inner = sites.expanded(a.bandwidth() + 1).clipped_to(a.domain());
  return a.dense(sites, inner) * b.dense(inner, sites);
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Windows store deviations from the background, so a rebuilt entry may pick
// up one rounding of (value - background) + background.
constexpr double kRoundOff = 1e-14;

}  // namespace

TEST_CASE("shift algebra on the full line") {
  const LatticeOperator s = bilateral_shift(1);
  const LatticeOperator prod = s * adjoint(s);
  CHECK(distance(prod, LatticeOperator::identity(1, Domain::FullLine)) == 0.0);
  CHECK(prod.window().empty());

  const LatticeOperator s2 = s * s;
  CHECK(s2.right_background().diagonals().size() == 1);
  CHECK(s2.right_background().find(-2) != nullptr);
  CHECK(s2.window().empty());
}

TEST_CASE("half-line shift defects") {
  const LatticeOperator s = half_shift(1);
  const Defects d = defect_operators(s);
  CHECK(d.left.window() == SiteInterval{0, 0});
  Matrix projector = Matrix::Zero(6, 6);
  projector(0, 0) = 1.0;
  CHECK(max_abs(d.left.dense({0, 5}) - projector) == 0.0);
  CHECK(d.right.window().empty());

  const Defects u = defect_operators(bilateral_shift(3));
  CHECK(u.left.window().empty());
  CHECK(u.right.window().empty());
}

TEST_CASE("addition of a finite term matches the dense sum") {
  Rng rng(11);
  const LatticeOperator f = grading();
  const SiteInterval w{-3, 2};
  const LatticeOperator k = random_hermitian(rng, 1, Domain::FullLine, w, 1.0);
  const double s = 0.37;
  const LatticeOperator sum = f + Complex(2.0 * s) * k;
  const SiteInterval big{-20, 19};
  CHECK(max_abs(sum.dense(big) - (f.dense(big) + 2.0 * s * k.dense(big))) < 1e-12);
  CHECK(sum.left_background().distance(f.left_background()) == 0.0);
  CHECK(sum.right_background().distance(f.right_background()) == 0.0);
}

TEST_CASE("representation exactness against dense arithmetic") {
  Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const Domain domain = trial % 2 == 0 ? Domain::FullLine : Domain::HalfLine;
    const int d = 1 + trial % 3;
    const long lo = domain == Domain::FullLine ? rng.integer(-4, 1) : rng.integer(0, 3);
    const LatticeOperator a =
        random_operator(rng, d, domain, rng.integer(0, 2), {lo, lo + rng.integer(0, 4)});
    const LatticeOperator b =
        random_operator(rng, d, domain, rng.integer(0, 2), {lo + 1, lo + 1 + rng.integer(0, 3)});
    const SiteInterval probe = SiteInterval{-15, 15}.clipped_to(domain);
    const double scale = 1.0 + max_abs(a.dense(probe)) * max_abs(b.dense(probe));

    CHECK(max_abs((a + b).dense(probe) - (a.dense(probe) + b.dense(probe))) <= 1e-12 * scale);
    CHECK(max_abs((a * b).dense(probe) - dense_product(a, b, probe)) <= 1e-12 * scale);
    CHECK(max_abs(adjoint(a).dense(probe) - a.dense(probe).adjoint()) <= kRoundOff * scale);
    CHECK(max_abs(transpose(a).dense(probe) - a.dense(probe).transpose()) <= kRoundOff * scale);
    CHECK(max_abs(conjugate(a).dense(probe) - a.dense(probe).conjugate()) == 0.0);
  }
}

TEST_CASE("star operations") {
  const LatticeOperator s = bilateral_shift(1);
  CHECK(distance(adjoint(s), bilateral_shift(-1)) == 0.0);
  CHECK(adjoint(s).right_background().find(1) != nullptr);

  const LatticeOperator real = half_shift(2) + half_shift(-1);
  CHECK(distance(conjugate(real), real) == 0.0);

  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const LatticeOperator a = random_operator(rng, 2, Domain::FullLine, 2, {-2, 3});
    const LatticeOperator back = transpose(transpose(a));
    CHECK(max_abs(back.dense({-12, 12}) - a.dense({-12, 12})) <= kRoundOff);
  }
}

TEST_CASE("algebra rejects mismatched operands") {
  const LatticeOperator a = LatticeOperator::identity(1, Domain::FullLine);
  try {
    (void)(a + LatticeOperator::identity(2, Domain::FullLine));
    FAIL("expected a dimension mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
  try {
    (void)(a * LatticeOperator::identity(1, Domain::HalfLine));
    FAIL("expected a domain mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DomainMismatch);
  }
}

TEST_CASE("symmetry classification") {
  const SymmetryContext ctx = SymmetryContext::canonical(2);
  ctx.validate();
  const LatticeOperator t_prime = fiber_direct_sum(half_shift(1), half_shift(-1));
  const SymmetryFlags flags = classify_symmetry(t_prime, ctx);
  CHECK(flags.has(SymmetryFlag::OddSymmetric));
  CHECK_FALSE(flags.has(SymmetryFlag::EvenSymmetric));
  CHECK_FALSE(flags.has(SymmetryFlag::OddReal));
  // Real entries, so it is trivially even real for J = 1.
  CHECK(flags.to_string() == "even_real,odd_symmetric");

  const SymmetryFlags id_flags =
      classify_symmetry(LatticeOperator::identity(2, Domain::HalfLine), ctx);
  CHECK(id_flags.to_string() == "even_real,odd_real,even_symmetric,odd_symmetric");

  Rng rng(77);
  for (int i = 0; i < 10; ++i) {
    const LatticeOperator a = random_operator(rng, 2, Domain::HalfLine, 1, {0, 3});
    const LatticeOperator t = siegel_sample(a, ctx);
    CHECK(classify_symmetry(t, ctx).has(SymmetryFlag::OddSymmetric));
  }
}

TEST_CASE("odd symmetry is closed under sums and Siegel conjugation") {
  const SymmetryContext ctx = SymmetryContext::canonical(2);
  Rng rng(8);
  const LatticeOperator i_star = LatticeOperator::fiber_constant(ctx.I.adjoint(), Domain::HalfLine);
  const LatticeOperator i_op = LatticeOperator::fiber_constant(ctx.I, Domain::HalfLine);
  for (int i = 0; i < 10; ++i) {
    const LatticeOperator t1 = siegel_sample(random_operator(rng, 2, Domain::HalfLine, 1, {0, 2}), ctx);
    const LatticeOperator t2 = siegel_sample(random_operator(rng, 2, Domain::HalfLine, 2, {1, 3}), ctx);
    const LatticeOperator a = random_operator(rng, 2, Domain::HalfLine, 1, {0, 2});
    const double scale = 1.0 + operator_norm(t1) * operator_norm(a) * operator_norm(a);
    CHECK(is_odd_symmetric(t1 + t2, ctx, 1e-10 * scale));
    CHECK(is_odd_symmetric(i_star * transpose(a) * i_op * t1 * a, ctx, 1e-10 * scale));
  }
}

TEST_CASE("fold and unfold") {
  const LatticeOperator one = LatticeOperator::identity(1, Domain::HalfLine);
  const LatticeOperator zero = LatticeOperator::zero(1, Domain::HalfLine);
  CHECK(distance(fold({one, zero, zero, one}), LatticeOperator::identity(1, Domain::FullLine)) ==
        0.0);

  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const int d = 1 + i % 2;
    const BlockOperator blocks{
        random_operator(rng, d, Domain::HalfLine, 2, {0, 3}),
        LatticeOperator::finite(d, Domain::HalfLine, {0, 2}, rng.gaussian(3 * d, 3 * d)),
        LatticeOperator::finite(d, Domain::HalfLine, {1, 2}, rng.gaussian(2 * d, 2 * d)),
        random_operator(rng, d, Domain::HalfLine, 1, {0, 1})};
    const BlockOperator back = unfold(fold(blocks));
    const SiteInterval probe{0, 15};
    CHECK(max_abs(back.a.dense(probe) - blocks.a.dense(probe)) <= kRoundOff);
    CHECK(max_abs(back.b.dense(probe) - blocks.b.dense(probe)) <= kRoundOff);
    CHECK(max_abs(back.c.dense(probe) - blocks.c.dense(probe)) <= kRoundOff);
    CHECK(max_abs(back.d.dense(probe) - blocks.d.dense(probe)) <= kRoundOff);
  }
}

TEST_CASE("window compressions") {
  const LatticeOperator id = LatticeOperator::identity(1, Domain::FullLine);
  Compression c = window_compression(id, 3);
  CHECK(max_abs(c.matrix - Matrix::Identity(c.matrix.rows(), c.matrix.cols())) == 0.0);

  c = window_compression(grading(), 2);
  for (Eigen::Index r = 0; r < c.matrix.rows(); ++r) {
    CHECK(c.matrix(r, r).real() == (c.site_of(r) >= 0 ? 1.0 : -1.0));
  }
  CHECK(max_abs(c.matrix - Matrix(c.matrix.diagonal().asDiagonal())) == 0.0);

  c = window_compression(bilateral_shift(1), 4);
  const Eigen::Index m = c.matrix.rows();
  Matrix nilpotent = Matrix::Zero(m, m);
  for (Eigen::Index r = 0; r + 1 < m; ++r) nilpotent(r, r + 1) = 1.0;
  CHECK(max_abs(c.matrix - nilpotent) == 0.0);
}

TEST_CASE("discrete spectrum of the grading is empty") {
  CHECK(discrete_spectrum(grading(), -0.5, 0.5).eigenvalues.empty());
}

TEST_CASE("discrete spectrum against a dense oracle") {
  Rng rng(31);
  for (int i = 0; i < 10; ++i) {
    const SiteInterval w{-2, 0};
    Matrix v = rng.gaussian(3, 3);
    Matrix k = Matrix::Zero(3, 3);
    for (int j = 0; j < 3; ++j) k += rng.uniform(-0.9, 0.9) * v.col(j) * v.col(j).adjoint() / v.col(j).squaredNorm();
    const LatticeOperator o = grading() + LatticeOperator::finite(1, Domain::FullLine, w, k);
    const DiscreteSpectrum spec = discrete_spectrum(o, -0.999, 0.999);
    CHECK(spec.exact);
    // Brute force on a window twice as large as anything the solver touched.
    Eigen::SelfAdjointEigenSolver<Matrix> es(o.dense({-40, 40}));
    std::vector<double> oracle;
    for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j) {
      const double x = es.eigenvalues()(j);
      if (x > -0.999 && x < 0.999) oracle.push_back(x);
    }
    const std::vector<double> got = spec.values();
    REQUIRE(got.size() == oracle.size());
    for (std::size_t j = 0; j < got.size(); ++j) CHECK(std::abs(got[j] - oracle[j]) < 1e-10);
  }
}

TEST_CASE("adaptive window finds the impurity bound state") {
  // -(S + S*) + v|0><0| has one bound state at -sqrt(v^2 + 4) for v < 0.
  const double v = -3.0;
  Matrix pot = Matrix::Zero(1, 1);
  pot(0, 0) = v;
  const LatticeOperator h = Complex(-1.0) * (bilateral_shift(1) + bilateral_shift(-1)) +
                            LatticeOperator::finite(1, Domain::FullLine, {0, 0}, pot);
  const DiscreteSpectrum spec = discrete_spectrum(h, -10.0, -2.5);
  CHECK_FALSE(spec.exact);
  REQUIRE(spec.eigenvalues.size() == 1);
  CHECK(spec.eigenvalues[0].value == doctest::Approx(-std::sqrt(v * v + 4.0)).epsilon(1e-9));

  try {
    (void)discrete_spectrum(h, -1.0, 1.0);
    FAIL("interval overlaps the band");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GapInEssentialSpectrum);
  }
}

TEST_CASE("exact-support lemma: margin growth leaves the spectrum unchanged") {
  Rng rng(99);
  for (int i = 0; i < 20; ++i) {
    const int d = 1 + i % 2;
    const LatticeOperator o =
        grading(d) + random_hermitian(rng, d, Domain::FullLine, {-2, 1}, 0.9);
    const std::vector<double> base = discrete_spectrum(o, -0.999, 0.999, 1e-9, 0).values();
    for (long margin = 1; margin <= 20; ++margin) {
      const std::vector<double> grown = discrete_spectrum(o, -0.999, 0.999, 1e-9, margin).values();
      REQUIRE(grown.size() == base.size());
      for (std::size_t j = 0; j < base.size(); ++j) CHECK(std::abs(grown[j] - base[j]) <= 1e-12);
    }
  }
}

TEST_CASE("polar example: two kernel projections give a double zero") {
  // F + 2s(-(1 - V*V) (+) (1 - VV*)) at s = 1/2 with V = S.
  const LatticeOperator p0 = defect_operators(half_shift(1)).left;  // |0><0|
  const LatticeOperator zero = LatticeOperator::zero(1, Domain::HalfLine);
  const LatticeOperator kick = fold({Complex(-1.0) * p0, zero, zero, p0});
  const LatticeOperator o = grading() + kick;
  const DiscreteSpectrum spec = discrete_spectrum(o, -0.5, 0.5);
  REQUIRE(spec.eigenvalues.size() == 1);
  CHECK(spec.eigenvalues[0].multiplicity == 2);
  CHECK(std::abs(spec.eigenvalues[0].value) < 1e-14);
}

TEST_CASE("operator JSON round trip") {
  Rng rng(4);
  const LatticeOperator a = random_operator(rng, 2, Domain::FullLine, 1, {-1, 2});
  const LatticeOperator b = operator_from_json(Json::parse(to_json(a).dump()));
  CHECK(distance(a, b) == 0.0);
  const Json j = to_json(half_shift(1));
  CHECK(j.at("domain") == "half");
  CHECK(j.at("fiber_dim") == 1);
}
