#include "specflow/verification.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <thread>

#include "specflow/dilation.hpp"
#include "specflow/error.hpp"
#include "specflow/fredholm.hpp"
#include "specflow/kramers.hpp"
#include "specflow/mapping_cone.hpp"
#include "specflow/spectral_flow.hpp"

namespace specflow {

namespace {

constexpr std::pair<Theorem, const char*> kTheorems[] = {
    {Theorem::T31, "t31"}, {Theorem::T71, "t71"},       {Theorem::T43, "t43"},
    {Theorem::T44, "t44"}, {Theorem::Z2Pair, "z2pair"}, {Theorem::Kramers, "kramers"},
};

CaseStatus verdict(bool ok) { return ok ? CaseStatus::Pass : CaseStatus::Fail; }

bool matches(const std::optional<int>& expected, int value) {
  return !expected || *expected == value;
}

void run_t31(const CorpusCase& c, const BuiltCase& b, CaseResult& r) {
  // The polar dilation compresses to the partial isometry, not to T.
  const LatticeOperator compressed =
      c.dilation == DilationKind::Polar ? polar_decomposition(b.t).isometry : b.t;
  const DilationReport dil = validate_dilation(b.u, compressed);
  const OperatorPath path = canonical_path(b.f, b.u);
  const FlowReport flow = spectral_flow(path);
  const int index = fredholm_index(b.t);
  const int pair = sf_via_pair_index(path);
  r.values = {{"index", index},
              {"flow", flow.flow},
              {"pair_index_flow", pair},
              {"dilation_unitarity", dil.unitarity_defect},
              {"dilation_compression", dil.compression_residual},
              {"refinements", flow.diagnostics.refinements}};
  r.status = verdict(dil.passed && flow.flow == -index && pair == flow.flow &&
                     matches(c.expected.index, index));
}

void run_t71(const CorpusCase& c, const BuiltCase& b, CaseResult& r) {
  const int z2 = z2_index(b.t, *b.context);
  const FlowReport flow = z2_spectral_flow(b.f, b.u, *b.context);
  r.values = {{"z2_index", z2}, {"sf2", *flow.flow_mod2}, {"half_path_flow", flow.flow}};
  r.status = verdict(z2 == *flow.flow_mod2 && matches(c.expected.z2, z2));
}

void run_t43(const CorpusCase&, const BuiltCase& b, CaseResult& r) {
  const OddPairing p = pairing_odd(b.f, b.u);
  r.values = {{"index", p.index},
              {"flow", p.flow},
              {"sign", p.calibrated_sign},
              {"literal", p.literal},
              {"calibrated", p.calibrated}};
  r.status = verdict(p.calibrated);
}

void run_t44(const CorpusCase& c, const BuiltCase& b, CaseResult& r) {
  const LatticeOperator p = half_line_projection(c.fiber_dim());
  const EvenPairing e = pairing_even(p, b.u);
  const int sign = odd_pairing_sign();
  const bool literal = e.index_matches_flow && e.flow_matches_winding;
  const bool calibrated = e.flow_matches_winding && e.index == sign * e.flow;
  r.values = {{"index", e.index}, {"flow", e.flow},       {"winding", e.winding},
              {"sign", sign},     {"literal", literal},   {"calibrated", calibrated}};
  r.status = verdict(calibrated);
}

void run_z2pair(const CorpusCase& c, const BuiltCase& b, CaseResult& r) {
  const Z2Pairing z = z2_pairing(half_line_projection(2), b.u, *b.context);
  r.values = {{"z2_index", z.index}, {"sf2", z.flow}};
  r.status = verdict(z.agree && matches(c.expected.z2, z.index));
}

void run_kramers(const CorpusCase&, const BuiltCase& b, CaseResult& r) {
  const OperatorPath path = canonical_path(b.f, b.u, 0, PathTag::Odd, b.context);
  const FlowReport flow = z2_flow_of_path(path);
  bool ok = true;
  bool degenerate_mid = false;
  double pairing = 0.0;
  double partner = 0.0;
  Json nodes = Json::array();
  for (double s : {0.0, 0.5, 1.0}) {
    const KramersReport k = kramers_check(path.at(s), kramers_partner(path, s));
    ok = ok && k.passed;
    pairing = std::max(pairing, k.pairing_residual);
    partner = std::max(partner, k.partner_residual);
    if (s == 0.5) {
      for (int m : k.multiplicities) degenerate_mid = degenerate_mid || (m >= 2 && m % 2 == 0);
    }
    nodes.push_back({{"s", s}, {"eigenvalues", k.eigenvalues},
                     {"multiplicities", k.multiplicities}, {"passed", k.passed}});
  }
  const bool forced = *flow.flow_mod2 == 1;
  r.values = {{"sf2", *flow.flow_mod2},     {"pairing_residual", pairing},
              {"partner_residual", partner}, {"degenerate_at_half", degenerate_mid},
              {"nodes", nodes}};
  r.status = verdict(ok && (!forced || degenerate_mid));
}

}  // namespace

const char* to_string(Theorem t) {
  for (const auto& [v, name] : kTheorems) {
    if (v == t) return name;
  }
  return "?";
}

Theorem theorem_from_string(const std::string& name) {
  for (const auto& [v, label] : kTheorems) {
    if (name == label) return v;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown theorem '" + name + "'");
}

const std::vector<Theorem>& all_theorems() {
  static const std::vector<Theorem> all = {Theorem::T31, Theorem::T71,    Theorem::T43,
                                           Theorem::T44, Theorem::Z2Pair, Theorem::Kramers};
  return all;
}

const char* to_string(CaseStatus s) {
  switch (s) {
    case CaseStatus::Pass:
      return "pass";
    case CaseStatus::Fail:
      return "fail";
    case CaseStatus::Skipped:
      return "skipped";
    case CaseStatus::Error:
      return "error";
  }
  return "?";
}

CaseResult verify_case(const CorpusCase& c, Theorem theorem) {
  CaseResult r;
  r.id = c.id;
  const bool needs_odd =
      theorem == Theorem::T71 || theorem == Theorem::Z2Pair || theorem == Theorem::Kramers;
  if (needs_odd && c.klass != CaseClass::Odd) {
    r.status = CaseStatus::Skipped;
    r.message = "not an odd symmetric case";
    return r;
  }
  try {
    const BuiltCase b = build_case(c);
    switch (theorem) {
      case Theorem::T31:
        run_t31(c, b, r);
        break;
      case Theorem::T71:
        run_t71(c, b, r);
        break;
      case Theorem::T43:
        run_t43(c, b, r);
        break;
      case Theorem::T44:
        run_t44(c, b, r);
        break;
      case Theorem::Z2Pair:
        run_z2pair(c, b, r);
        break;
      case Theorem::Kramers:
        run_kramers(c, b, r);
        break;
    }
  } catch (const Error& e) {
    r.status = CaseStatus::Error;
    r.message = e.what();
  }
  return r;
}

int VerificationRun::count(CaseStatus s) const {
  return static_cast<int>(std::count_if(results.begin(), results.end(),
                                        [s](const CaseResult& r) { return r.status == s; }));
}

int VerificationRun::exit_code() const {
  if (count(CaseStatus::Error) > 0) return 2;
  if (count(CaseStatus::Fail) > 0) return 1;
  return 0;
}

VerificationRun verify_corpus(const Corpus& corpus, Theorem theorem, int workers) {
  VerificationRun run;
  run.theorem = theorem;
  run.results.resize(corpus.cases.size());
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min<int>(workers, std::max<std::size_t>(1, corpus.cases.size()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < corpus.cases.size(); i = next++) {
      run.results[i] = verify_case(corpus.cases[i], theorem);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  std::sort(run.results.begin(), run.results.end(),
            [](const CaseResult& a, const CaseResult& b) { return a.id < b.id; });
  return run;
}

Json to_json(const VerificationRun& run) {
  Json cases = Json::array();
  for (const CaseResult& r : run.results) {
    Json entry = {{"id", r.id}, {"status", to_string(r.status)}, {"values", r.values}};
    if (!r.message.empty()) entry["message"] = r.message;
    cases.push_back(entry);
  }
  return {{"theorem", to_string(run.theorem)},
          {"summary",
           {{"total", run.results.size()},
            {"passed", run.count(CaseStatus::Pass)},
            {"failed", run.count(CaseStatus::Fail)},
            {"skipped", run.count(CaseStatus::Skipped)},
            {"errors", run.count(CaseStatus::Error)}}},
          {"cases", cases}};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace specflow
