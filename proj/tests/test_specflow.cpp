#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <set>

#include "specflow/corpus.hpp"
#include "specflow/dilation.hpp"
#include "specflow/kramers.hpp"
#include "specflow/operator_path.hpp"
#include "specflow/serialization.hpp"
#include "specflow/spectral_flow.hpp"
#include "specflow/spectrum.hpp"
#include "specflow/winding.hpp"
#include "support.hpp"

using namespace specflow;
using namespace specflow::testing;

namespace {

OperatorPath constant_path(const LatticeOperator& f) {
  OperatorPath path;
  path.at = [f](double) { return f; };
  path.grid = uniform_grid(4);
  path.base = f;
  return path;
}

// e^{i theta} on one fiber entry of one site, identity elsewhere.
LatticeOperator phase_at_site(double theta) {
  Matrix m = Matrix::Zero(1, 1);
  m(0, 0) = std::polar(1.0, theta) - 1.0;
  return LatticeOperator::identity(1, Domain::FullLine) +
         LatticeOperator::finite(1, Domain::FullLine, {3, 3}, m);
}

const Corpus& mixed_corpus() {
  static const Corpus c =
      generate_corpus(30, 77, {CaseClass::Shift, CaseClass::Polar, CaseClass::Perturbed});
  return c;
}

const Corpus& odd_corpus() {
  static const Corpus c = generate_corpus(8, 79, {CaseClass::Odd});
  return c;
}

}  // namespace

TEST_CASE("constant paths have no flow") {
  const LatticeOperator f = grading();
  const FlowReport r = spectral_flow(constant_path(f));
  CHECK(r.flow == 0);
  CHECK(sf_via_pair_index(constant_path(f)) == 0);
  const PhiReport phi = phi_equivalence_check(constant_path(f));
  CHECK(phi.flow == 0);
  CHECK(phi.winding == 0);

  // U commuting with F gives the constant canonical path.
  const LatticeOperator u = LatticeOperator::fiber_constant(Matrix::Identity(1, 1) * Complex(0, 1),
                                                            Domain::FullLine);
  const OperatorPath path = canonical_path(f, u);
  for (double s : path.grid) CHECK(distance(path.at(s), f) == 0.0);
  CHECK(sf_pair(f, LatticeOperator::identity(1, Domain::FullLine)) == 0);
}

TEST_CASE("bilateral shift") {
  const LatticeOperator f = grading();
  const LatticeOperator u = bilateral_shift(1);
  const OperatorPath path = canonical_path(f, u);
  // [F, S] = -2|-1><0| couples sites -1 and 0; U*[F, U] = -2|0><0|.
  CHECK(commutator(f, u).window() == SiteInterval{-1, 0});
  const LatticeOperator c = path.at(1.0) - f;
  CHECK(c.window() == SiteInterval{0, 0});
  CHECK(c.perturbation()(0, 0) == Complex(-2.0));
  CHECK(check_path(path).passed);

  const FlowReport r = spectral_flow(path);
  CHECK(r.flow == -1);
  REQUIRE(r.diagnostics.doubled_flow.has_value());
  CHECK(*r.diagnostics.doubled_flow == -1);
  CHECK(sf_via_pair_index(path) == -1);
  const PhiReport phi = phi_equivalence_check(path);
  CHECK(phi.agree);
  CHECK(phi.winding == -1);

  for (int n = -3; n <= 3; ++n) CHECK(sf_pair(f, bilateral_shift(n)) == -n);
}

TEST_CASE("flow of dilations equals minus the index") {
  const LatticeOperator f = dilation_grading(1);
  for (const CorpusCase& c : mixed_corpus().cases) {
    const LatticeOperator t = build_contraction(c);
    for (DilationKind kind : {DilationKind::Halmos, DilationKind::Polar, DilationKind::Randomized}) {
      const OperatorPath path = canonical_path(f, build_dilation(c, t, kind));
      const FlowReport r = spectral_flow(path);
      CHECK(r.flow == -c.shift_power);
      CHECK(sf_via_pair_index(path) == r.flow);
    }
  }
}

TEST_CASE("random paths in the admissible class") {
  const LatticeOperator f = grading();
  const LatticeOperator u = bilateral_shift(1);
  const OperatorPath zero_bump = random_theta_path(f, u, 3, 0, PathTag::Plain, std::nullopt, 0.0);
  const OperatorPath canonical = canonical_path(f, u);
  for (double s : {0.0, 0.3, 0.5, 0.9}) {
    CHECK(distance(zero_bump.at(s), canonical.at(s)) == 0.0);
  }
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const OperatorPath path = random_theta_path(f, u, seed);
    CHECK(check_path(path).passed);
    CHECK(spectral_flow(path).flow == -1);
  }
}

TEST_CASE("path independence across random paths") {
  for (std::size_t i = 0; i < 6; ++i) {
    const BuiltCase b = build_case(mixed_corpus().cases[i]);
    std::set<int> flows;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      flows.insert(spectral_flow(random_theta_path(b.f, b.u, mix_seed(seed, i))).flow);
    }
    CHECK(flows.size() == 1);
    CHECK(*flows.begin() == sf_pair(b.f, b.u));
  }
}

TEST_CASE("local constancy under small finite perturbations") {
  Rng rng(606);
  for (std::size_t i = 0; i < 10; ++i) {
    const BuiltCase b = build_case(mixed_corpus().cases[i]);
    const SiteInterval w{-3, 2};
    // exp(i h) with |h| <= 0.05 is within 0.05 of the identity.
    const LatticeOperator h = random_hermitian(rng, 1, Domain::FullLine, w, 0.05);
    const LatticeOperator rot =
        hermitian_function(h, [](double x) { return std::exp(Complex(0.0, x)); });
    const LatticeOperator f2 = rot * b.f * adjoint(rot);
    CHECK(sf_pair(b.f, b.u * rot) == sf_pair(b.f, b.u));
    CHECK(sf_pair(f2, b.u) == sf_pair(b.f, b.u));
  }
}

TEST_CASE("concatenation is additive") {
  for (std::size_t i = 0; i < 10; ++i) {
    const BuiltCase b = build_case(mixed_corpus().cases[i]);
    const OperatorPath path = canonical_path(b.f, b.u);
    FlowOptions first;
    first.s_end = 0.37;
    FlowOptions second;
    second.s_begin = 0.37;
    CHECK(spectral_flow(path, first).flow + spectral_flow(path, second).flow ==
          spectral_flow(path).flow);
  }
}

TEST_CASE("refinement cap comes from the environment") {
  CHECK(max_refine_from_env(14) == 14);
  setenv("SPECFLOW_MAX_REFINE", "5", 1);
  CHECK(max_refine_from_env(14) == 5);
  setenv("SPECFLOW_MAX_REFINE", "junk", 1);
  CHECK(max_refine_from_env(14) == 14);
  unsetenv("SPECFLOW_MAX_REFINE");
}

TEST_CASE("Z2 flow") {
  const SymmetryContext ctx = SymmetryContext::canonical(2);
  const LatticeOperator f = dilation_grading(2);
  CHECK(*z2_spectral_flow(f, LatticeOperator::identity(2, Domain::FullLine), ctx).flow_mod2 == 0);

  const LatticeOperator u0 = odd_symmetric_dilation_U0();
  const OperatorPath odd = canonical_path(f, u0, 0, PathTag::Odd, ctx);
  CHECK(check_path(odd).passed);
  CHECK(*z2_flow_of_path(odd).flow_mod2 == 1);

  const LatticeOperator t_prime = fiber_direct_sum(half_shift(1), half_shift(-1));
  CHECK(*z2_spectral_flow(f, halmos_dilation(t_prime), ctx).flow_mod2 == 1);

  for (const CorpusCase& c : odd_corpus().cases) {
    const BuiltCase b = build_case(c);
    const int sf2 = *z2_spectral_flow(b.f, b.u, ctx).flow_mod2;
    CHECK(sf2 == *c.expected.z2);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const OperatorPath path = random_theta_path(b.f, b.u, seed, 0, PathTag::Odd, ctx);
      CHECK(check_path(path).passed);
      CHECK(*z2_flow_of_path(path).flow_mod2 == sf2);
    }
  }
}

TEST_CASE("Kramers degeneracy along odd paths") {
  const SymmetryContext ctx = SymmetryContext::canonical(2);
  const LatticeOperator f = dilation_grading(2);
  const OperatorPath path = canonical_path(f, odd_symmetric_dilation_U0(), 0, PathTag::Odd, ctx);
  for (double s : {0.0, 0.5, 1.0}) {
    const KramersReport r = kramers_check(path.at(s), kramers_partner(path, s));
    CHECK(r.passed);
    CHECK(r.relation_residual < 1e-12);
  }
  const KramersReport mid = kramers_check(path.at(0.5), kramers_partner(path, 0.5));
  REQUIRE(mid.eigenvalues.size() == 1);
  CHECK(std::abs(mid.eigenvalues[0]) < 1e-12);
  CHECK(mid.multiplicities[0] == 2);

  // Nothing in the gap: vacuous pass.
  const KramersReport empty = kramers_check(f, kramers_partner(path, 0.0));
  CHECK(empty.passed);
  CHECK(empty.eigenvalues.empty());

  for (const CorpusCase& c : odd_corpus().cases) {
    const BuiltCase b = build_case(c);
    const OperatorPath p = canonical_path(b.f, b.u, 0, PathTag::Odd, ctx);
    for (double s : {0.0, 0.5, 1.0}) {
      const KramersReport r = kramers_check(p.at(s), kramers_partner(p, s));
      CHECK(r.passed);
      CHECK(r.pairing_residual < 1e-8);
    }
  }
}

TEST_CASE("winding numbers") {
  const UnitaryPath constant{[](double) { return phase_at_site(0.3); }, 0.0, 1.0};
  CHECK(winding_number(constant).winding == 0);

  const UnitaryPath loop{[](double s) { return phase_at_site(2.0 * std::numbers::pi * s); }, 0.0,
                         1.0};
  CHECK(winding_number(loop).winding == 1);
  const UnitaryPath back{[](double s) { return phase_at_site(-2.0 * std::numbers::pi * s); }, 0.0,
                         1.0};
  CHECK(winding_number(back).winding == -1);
  const UnitaryPath twice{[](double s) { return phase_at_site(4.0 * std::numbers::pi * s); }, 0.0,
                          1.0};
  const WindingReport r = winding_number(twice);
  CHECK(r.winding == 2);
  CHECK(std::abs(r.raw - 2.0) < 1e-6);
}

TEST_CASE("phi map equivalence on corpus paths") {
  for (const CorpusCase& c : mixed_corpus().cases) {
    const BuiltCase b = build_case(c);
    const PhiReport r = phi_equivalence_check(canonical_path(b.f, b.u));
    CHECK(r.agree);
    CHECK(r.flow == -c.shift_power);
  }
}

TEST_CASE("flow report export") {
  const FlowReport r = spectral_flow(canonical_path(grading(), bilateral_shift(1), 8));
  const Json j = to_json(r);
  CHECK(j.at("flow") == -1);
  CHECK(j.at("flow_mod2").is_null());
  CHECK(j.at("curves").size() == r.curves.size());
  const std::string csv = curves_csv(r);
  CHECK(csv.rfind("s,lambda_1", 0) == 0);
}
