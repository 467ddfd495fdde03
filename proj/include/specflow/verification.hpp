#pragma once

#include <string>
#include <vector>

#include "specflow/corpus.hpp"
#include "specflow/serialization.hpp"

namespace specflow {

enum class Theorem { T31, T71, T43, T44, Z2Pair, Kramers };

const char* to_string(Theorem t);
Theorem theorem_from_string(const std::string& name);
const std::vector<Theorem>& all_theorems();

enum class CaseStatus { Pass, Fail, Skipped, Error };

const char* to_string(CaseStatus s);

struct CaseResult {
  int id = 0;
  CaseStatus status = CaseStatus::Pass;
  Json values = Json::object();
  std::string message;
};

/// Runs one identity on one case; engine errors become CaseStatus::Error.
///   t31     flow = -Ind(T) = Ind(P(0), P(1)), dilation valid
///   t71     SF_2(F, U) = Ind_2(T)
///   t43     Ind(PUP) = sign * SF(F, U), sign calibrated on the shift
///   t44     Wind(exp map) = SF(2P - 1, U) and Ind(PUP) = sign * SF
///   z2pair  Ind_2(PUP) = SF_2(2P - 1, U)
///   kramers even multiplicities at s = 0, 1/2, 1 of the odd canonical path
CaseResult verify_case(const CorpusCase& c, Theorem theorem);

struct VerificationRun {
  Theorem theorem = Theorem::T31;
  std::vector<CaseResult> results;

  int count(CaseStatus s) const;
  /// 0 all pass (or skipped), 1 some identity fails, 2 engine error.
  int exit_code() const;
};

/// Processes cases on a pool of worker threads; results are ordered by case
/// id regardless of scheduling.
VerificationRun verify_corpus(const Corpus& corpus, Theorem theorem, int workers = 0);

Json to_json(const VerificationRun& run);

/// Current UTC time, ISO 8601.
std::string utc_timestamp();

}  // namespace specflow
