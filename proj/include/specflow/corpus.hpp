#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "specflow/lattice_operator.hpp"
#include "specflow/serialization.hpp"
#include "specflow/symmetry.hpp"

namespace specflow {

enum class CaseClass { Shift, Polar, Perturbed, Odd };
enum class DilationKind { Halmos, Polar, Randomized, U0 };
enum class OddFamily { None, Siegel, Conjugated, Standard };

const char* to_string(CaseClass c);
const char* to_string(DilationKind k);
const char* to_string(OddFamily f);
CaseClass case_class_from_string(const std::string& name);
DilationKind dilation_kind_from_string(const std::string& name);
OddFamily odd_family_from_string(const std::string& name);

struct ExpectedValues {
  std::optional<int> index;
  std::optional<int> z2;
  std::optional<int> flow;
};

/// Generator recipe. Every operator of a case is rebuilt from these fields;
/// the random parts are drawn from an Rng seeded with `seed`.
struct CorpusCase {
  int id = 0;
  std::uint64_t seed = 0;
  CaseClass klass = CaseClass::Shift;
  int shift_power = 1;
  /// Exponent r of the positive factor A^r (polar class).
  double polar_r = 1.0;
  /// Sites carrying the finite rotation / perturbation block.
  int perturbation_rank = 0;
  /// Exactly vanishing singular values of the perturbation block.
  int zero_modes = 0;
  OddFamily odd_family = OddFamily::None;
  DilationKind dilation = DilationKind::Halmos;
  ExpectedValues expected;

  int fiber_dim() const { return klass == CaseClass::Odd ? 2 : 1; }
};

Json to_json(const CorpusCase& c);
CorpusCase case_from_json(const Json& j);

struct BuiltCase {
  LatticeOperator t{1, Domain::HalfLine};  // contraction on l^2(N) (x) C^d
  LatticeOperator u{1, Domain::FullLine};  // its unitary dilation
  LatticeOperator f{1, Domain::FullLine};  // grading 2 Pi Pi* - 1
  std::optional<SymmetryContext> context;
};

/// Contraction of the case (no dilation).
LatticeOperator build_contraction(const CorpusCase& c);
BuiltCase build_case(const CorpusCase& c);
/// Dilation of the case's contraction of the requested kind.
LatticeOperator build_dilation(const CorpusCase& c, const LatticeOperator& t, DilationKind kind);

struct Corpus {
  std::uint64_t seed = 0;
  std::vector<CaseClass> classes;
  std::vector<CorpusCase> cases;
};

/// Round-robin over classes; per class the dilation kind cycles through
/// halmos, polar, randomized. The first shift case is S with Halmos and the
/// first odd case is diag(S, S*) with the U0 dilation.
Corpus generate_corpus(int count, std::uint64_t seed, const std::vector<CaseClass>& classes);

Json to_json(const Corpus& corpus);
Corpus corpus_from_json(const Json& j);

}  // namespace specflow
