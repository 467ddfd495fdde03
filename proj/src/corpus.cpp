#include "specflow/corpus.hpp"

#include <cmath>
#include <cstdlib>

#include "specflow/dilation.hpp"
#include "specflow/error.hpp"
#include "specflow/mapping_cone.hpp"
#include "specflow/rng.hpp"
#include "specflow/spectrum.hpp"

namespace specflow {

namespace {

constexpr Domain kHalf = Domain::HalfLine;

template <typename E, std::size_t N>
E lookup(const std::pair<E, const char*> (&table)[N], const std::string& name, const char* what) {
  for (const auto& [value, label] : table) {
    if (name == label) return value;
  }
  throw Error(ErrorCode::InvalidArgument, std::string("unknown ") + what + " '" + name + "'");
}

template <typename E, std::size_t N>
const char* label_of(const std::pair<E, const char*> (&table)[N], E value) {
  for (const auto& [v, label] : table) {
    if (v == value) return label;
  }
  return "?";
}

constexpr std::pair<CaseClass, const char*> kClasses[] = {
    {CaseClass::Shift, "shift"},
    {CaseClass::Polar, "polar"},
    {CaseClass::Perturbed, "perturbed"},
    {CaseClass::Odd, "odd"},
};
constexpr std::pair<DilationKind, const char*> kDilations[] = {
    {DilationKind::Halmos, "halmos"},
    {DilationKind::Polar, "polar"},
    {DilationKind::Randomized, "randomized"},
    {DilationKind::U0, "U0"},
};
constexpr std::pair<OddFamily, const char*> kFamilies[] = {
    {OddFamily::None, "none"},
    {OddFamily::Siegel, "siegel"},
    {OddFamily::Conjugated, "conjugated"},
    {OddFamily::Standard, "standard"},
};

LatticeOperator shift_power(int n, int d) {
  return LatticeOperator::laurent(LaurentSymbol::shift(n, d), kHalf);
}

// diag(S^n, S*^m) on fiber 2.
LatticeOperator split_shift(int n, int m) {
  Matrix e0 = Matrix::Zero(2, 2);
  Matrix e1 = Matrix::Zero(2, 2);
  e0(0, 0) = 1.0;
  e1(1, 1) = 1.0;
  return LatticeOperator::laurent(LaurentSymbol::monomial(-n, e0) + LaurentSymbol::monomial(m, e1),
                                 kHalf);
}

LatticeOperator finite_block(int d, int sites, const Matrix& block) {
  const Matrix id = Matrix::Identity(sites * d, sites * d);
  return LatticeOperator::identity(d, kHalf) +
         LatticeOperator::finite(d, kHalf, {0, sites - 1}, block - id);
}

LatticeOperator rotation(Rng& rng, int d, int sites) {
  return finite_block(d, sites, rng.haar_unitary(sites * d));
}

// W diag(sigma) V* with `zeros` vanishing singular values, the rest in [0.3, 1].
LatticeOperator contraction(Rng& rng, int d, int sites, int zeros) {
  const int n = sites * d;
  Eigen::VectorXd sigma(n);
  for (int i = 0; i < n; ++i) sigma(i) = i < zeros ? 0.0 : rng.uniform(0.3, 1.0);
  const Matrix w = rng.haar_unitary(n);
  const Matrix v = rng.haar_unitary(n);
  return finite_block(d, sites, w * sigma.cast<Complex>().asDiagonal() * v.adjoint());
}

// A^r with A = 1 - K, K >= 0 finite with spectrum in [0, 0.9].
LatticeOperator positive_factor(Rng& rng, int d, int sites, double r) {
  const int n = sites * d;
  Eigen::VectorXd mu(n);
  for (int i = 0; i < n; ++i) mu(i) = rng.uniform(0.0, 0.9);
  const Matrix q = rng.haar_unitary(n);
  const Matrix a = Matrix::Identity(n, n) - q * mu.cast<Complex>().asDiagonal() * q.adjoint();
  return hermitian_function(finite_block(d, sites, a),
                            [r](double x) { return Complex(std::pow(std::max(x, 0.0), r)); });
}

}  // namespace

const char* to_string(CaseClass c) { return label_of(kClasses, c); }
const char* to_string(DilationKind k) { return label_of(kDilations, k); }
const char* to_string(OddFamily f) { return label_of(kFamilies, f); }
CaseClass case_class_from_string(const std::string& name) {
  return lookup(kClasses, name, "case class");
}
DilationKind dilation_kind_from_string(const std::string& name) {
  return lookup(kDilations, name, "dilation kind");
}
OddFamily odd_family_from_string(const std::string& name) {
  return lookup(kFamilies, name, "odd family");
}

Json to_json(const CorpusCase& c) {
  auto opt = [](const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); };
  return {
      {"id", c.id},
      {"seed", c.seed},
      {"class", to_string(c.klass)},
      {"shift_power", c.shift_power},
      {"polar_r", c.polar_r},
      {"perturbation_rank", c.perturbation_rank},
      {"zero_modes", c.zero_modes},
      {"odd_family", to_string(c.odd_family)},
      {"dilation", to_string(c.dilation)},
      {"expected",
       {{"index", opt(c.expected.index)}, {"z2", opt(c.expected.z2)}, {"flow", opt(c.expected.flow)}}},
  };
}

CorpusCase case_from_json(const Json& j) {
  auto opt = [](const Json& v) {
    return v.is_null() ? std::optional<int>() : std::optional<int>(v.get<int>());
  };
  try {
    CorpusCase c;
    c.id = j.at("id").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.klass = case_class_from_string(j.at("class").get<std::string>());
    c.shift_power = j.at("shift_power").get<int>();
    c.polar_r = j.at("polar_r").get<double>();
    c.perturbation_rank = j.at("perturbation_rank").get<int>();
    c.zero_modes = j.at("zero_modes").get<int>();
    c.odd_family = odd_family_from_string(j.at("odd_family").get<std::string>());
    c.dilation = dilation_kind_from_string(j.at("dilation").get<std::string>());
    const Json& e = j.at("expected");
    c.expected = {opt(e.at("index")), opt(e.at("z2")), opt(e.at("flow"))};
    return c;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Io, std::string("malformed corpus case: ") + e.what());
  }
}

LatticeOperator build_contraction(const CorpusCase& c) {
  Rng rng(mix_seed(c.seed, 1));
  const int n = c.shift_power;
  const int sites = std::max(1, c.perturbation_rank);
  switch (c.klass) {
    case CaseClass::Shift:
      return shift_power(n, 1);
    case CaseClass::Polar: {
      const LatticeOperator r = rotation(rng, 1, sites);
      return shift_power(n, 1) * r * positive_factor(rng, 1, sites, c.polar_r);
    }
    case CaseClass::Perturbed:
      return shift_power(n, 1) * contraction(rng, 1, sites, c.zero_modes);
    case CaseClass::Odd: {
      const SymmetryContext ctx = SymmetryContext::canonical(2);
      if (c.odd_family == OddFamily::Standard) return split_shift(1, 1);
      if (c.odd_family == OddFamily::Conjugated) {
        const LatticeOperator w = rotation(rng, 2, sites);
        const LatticeOperator i_op = LatticeOperator::fiber_constant(ctx.I, kHalf);
        const LatticeOperator i_star = LatticeOperator::fiber_constant(ctx.I.adjoint(), kHalf);
        return i_star * transpose(w) * i_op * split_shift(n, n) * w;
      }
      const LatticeOperator r = rotation(rng, 2, sites);
      const LatticeOperator a = split_shift(n, 0) * r * contraction(rng, 2, sites, c.zero_modes);
      return siegel_sample(a, ctx);
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown case class");
}

LatticeOperator build_dilation(const CorpusCase& c, const LatticeOperator& t, DilationKind kind) {
  switch (kind) {
    case DilationKind::Halmos:
      return halmos_dilation(t);
    case DilationKind::Polar:
      return polar_isometry_dilation(t);
    case DilationKind::Randomized:
      return randomized_dilation(t, mix_seed(c.seed, 2));
    case DilationKind::U0:
      if (c.odd_family != OddFamily::Standard) {
        throw Error(ErrorCode::InvalidArgument, "U0 dilates diag(S, S*) only");
      }
      return odd_symmetric_dilation_U0();
  }
  throw Error(ErrorCode::InvalidArgument, "unknown dilation kind");
}

BuiltCase build_case(const CorpusCase& c) {
  BuiltCase built;
  built.t = build_contraction(c);
  built.u = build_dilation(c, built.t, c.dilation);
  built.f = dilation_grading(c.fiber_dim());
  if (c.klass == CaseClass::Odd) built.context = SymmetryContext::canonical(2);
  return built;
}

Corpus generate_corpus(int count, std::uint64_t seed, const std::vector<CaseClass>& classes) {
  if (count < 0) throw Error(ErrorCode::InvalidArgument, "count must be non-negative");
  if (classes.empty()) throw Error(ErrorCode::InvalidArgument, "no case classes selected");
  Corpus corpus;
  corpus.seed = seed;
  corpus.classes = classes;
  std::vector<int> per_class(4, 0);
  constexpr DilationKind kCycle[] = {DilationKind::Halmos, DilationKind::Polar,
                                     DilationKind::Randomized};
  for (int id = 0; id < count; ++id) {
    CorpusCase c;
    c.id = id;
    c.seed = mix_seed(seed, static_cast<std::uint64_t>(id));
    c.klass = classes[id % classes.size()];
    const int k = per_class[static_cast<int>(c.klass)]++;
    Rng rng(c.seed);
    c.shift_power = rng.integer(-2, 3);
    c.polar_r = std::ldexp(static_cast<double>(rng.integer(16, 64)), -6);
    c.perturbation_rank = rng.integer(1, 3);
    c.zero_modes = rng.integer(0, std::min(2, c.perturbation_rank));
    c.dilation = kCycle[k % 3];
    switch (c.klass) {
      case CaseClass::Shift:
        if (k == 0) c.shift_power = 1;
        c.perturbation_rank = 0;
        c.zero_modes = 0;
        break;
      case CaseClass::Polar:
        c.zero_modes = 0;
        break;
      case CaseClass::Perturbed:
        break;
      case CaseClass::Odd:
        c.dilation = DilationKind::Halmos;
        if (k == 0) {
          c.odd_family = OddFamily::Standard;
          c.dilation = DilationKind::U0;
          c.shift_power = 1;
          c.perturbation_rank = 0;
          c.zero_modes = 0;
        } else {
          c.odd_family = k % 2 == 1 ? OddFamily::Siegel : OddFamily::Conjugated;
          c.perturbation_rank = std::min(c.perturbation_rank, 2);
          if (c.odd_family == OddFamily::Conjugated) c.zero_modes = 0;
        }
        break;
    }
    if (c.klass == CaseClass::Odd) {
      c.expected.index = 0;
      c.expected.flow = 0;
      c.expected.z2 = std::abs(c.shift_power) % 2;
    } else {
      c.expected.index = c.shift_power;
      c.expected.flow = -c.shift_power;
    }
    corpus.cases.push_back(c);
  }
  return corpus;
}

Json to_json(const Corpus& corpus) {
  Json classes = Json::array();
  for (CaseClass c : corpus.classes) classes.push_back(to_string(c));
  Json cases = Json::array();
  for (const CorpusCase& c : corpus.cases) cases.push_back(to_json(c));
  return {{"schema_version", 1},
          {"seed", corpus.seed},
          {"count", corpus.cases.size()},
          {"classes", classes},
          {"cases", cases}};
}

Corpus corpus_from_json(const Json& j) {
  try {
    Corpus corpus;
    corpus.seed = j.at("seed").get<std::uint64_t>();
    for (const Json& c : j.at("classes")) {
      corpus.classes.push_back(case_class_from_string(c.get<std::string>()));
    }
    for (const Json& c : j.at("cases")) corpus.cases.push_back(case_from_json(c));
    return corpus;
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::Io, std::string("malformed corpus: ") + e.what());
  }
}

}  // namespace specflow
