#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "specflow/error.hpp"
#include "specflow/operator_path.hpp"
#include "specflow/spectral_flow.hpp"
#include "specflow/verification.hpp"

using namespace specflow;

namespace {

constexpr int kReportSchema = 1;

std::vector<CaseClass> parse_classes(const std::string& list) {
  std::vector<CaseClass> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(case_class_from_string(item));
  }
  return out;
}

Corpus load_corpus(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_text_file(path));
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::Io, path + ": " + e.what());
  }
  return corpus_from_json(j);
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
}

int cmd_gen(int count, std::uint64_t seed, const std::string& classes, const std::string& out) {
  const Corpus corpus = generate_corpus(count, seed, parse_classes(classes));
  emit(out, to_json(corpus).dump(2) + "\n");
  std::cerr << "wrote " << corpus.cases.size() << " cases\n";
  return 0;
}

void print_summary(const VerificationRun& run) {
  std::cerr << to_string(run.theorem) << ": " << run.count(CaseStatus::Pass) << " pass, "
            << run.count(CaseStatus::Fail) << " fail, " << run.count(CaseStatus::Skipped)
            << " skipped, " << run.count(CaseStatus::Error) << " error\n";
  for (const CaseResult& r : run.results) {
    if (r.status == CaseStatus::Fail || r.status == CaseStatus::Error) {
      std::cerr << "  case " << r.id << " " << to_string(r.status);
      if (!r.message.empty()) std::cerr << ": " << r.message;
      std::cerr << "\n";
    }
  }
}

int cmd_verify(const std::string& corpus_path, const std::string& theorem, const std::string& out,
               int workers) {
  const Corpus corpus = load_corpus(corpus_path);
  const Theorem t = theorem_from_string(theorem);
  if (corpus.cases.empty()) std::cerr << "warning: corpus is empty, nothing to verify\n";
  const VerificationRun run = verify_corpus(corpus, t, workers);
  emit(out, to_json(run).dump(2) + "\n");
  print_summary(run);
  return run.exit_code();
}

int cmd_curves(const std::string& corpus_path, int id, const std::string& kind,
               std::uint64_t seed, int intervals, const std::string& out) {
  const Corpus corpus = load_corpus(corpus_path);
  const auto it = std::find_if(corpus.cases.begin(), corpus.cases.end(),
                               [id](const CorpusCase& c) { return c.id == id; });
  if (it == corpus.cases.end()) {
    throw Error(ErrorCode::InvalidArgument, "unknown case id " + std::to_string(id));
  }
  const BuiltCase b = build_case(*it);
  const PathTag tag = b.context ? PathTag::Odd : PathTag::Plain;
  const OperatorPath path = kind == "random"
                                ? random_theta_path(b.f, b.u, seed, intervals, tag, b.context)
                                : canonical_path(b.f, b.u, intervals, tag, b.context);
  const FlowReport report = spectral_flow(path);
  const bool json = out.size() >= 5 && out.compare(out.size() - 5, 5, ".json") == 0;
  emit(out, json ? to_json(report).dump(2) + "\n" : curves_csv(report));
  std::cerr << "case " << id << " flow " << report.flow << "\n";
  return 0;
}

int cmd_report(const std::string& corpus_path, const std::string& out, int workers) {
  const Corpus corpus = load_corpus(corpus_path);
  if (corpus.cases.empty()) std::cerr << "warning: corpus is empty\n";
  Json theorems = Json::object();
  int code = 0;
  for (Theorem t : all_theorems()) {
    const VerificationRun run = verify_corpus(corpus, t, workers);
    print_summary(run);
    theorems[to_string(t)] = to_json(run);
    code = std::max(code, run.exit_code());
  }
  // generated_at is the only field that differs between identical runs.
  const Json report = {{"schema_version", kReportSchema},
                       {"generated_at", utc_timestamp()},
                       {"corpus", {{"seed", corpus.seed}, {"count", corpus.cases.size()}}},
                       {"exit_code", code},
                       {"theorems", theorems}};
  emit(out, report.dump(2) + "\n");
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral flow, dilation and index verification driver"};
  app.require_subcommand(1);

  int count = 100;
  std::uint64_t seed = 1;
  std::string classes = "shift,polar,perturbed,odd";
  std::string out;
  auto* gen = app.add_subcommand("gen", "generate a seeded corpus");
  gen->add_option("--count", count, "number of cases")->capture_default_str();
  gen->add_option("--seed", seed, "corpus seed")->capture_default_str();
  gen->add_option("--classes", classes, "comma list of shift,polar,perturbed,odd")
      ->capture_default_str();
  gen->add_option("--out", out, "output file (default stdout)");

  std::string corpus_path;
  std::string theorem;
  int workers = 0;
  auto* verify = app.add_subcommand("verify", "check one identity on every corpus case");
  verify->add_option("--corpus", corpus_path)->required();
  verify->add_option("--theorem", theorem)
      ->required()
      ->check(CLI::IsMember({"t31", "t71", "t43", "t44", "z2pair", "kramers"}));
  verify->add_option("--out", out, "report file (default stdout)");
  verify->add_option("--workers", workers, "worker threads (0 = hardware)");

  int case_id = 0;
  std::string path_kind = "canonical";
  int intervals = 0;
  auto* curves = app.add_subcommand("curves", "export eigenvalue curves of one case");
  curves->add_option("--corpus", corpus_path)->required();
  curves->add_option("--case", case_id)->required();
  curves->add_option("--path", path_kind)
      ->check(CLI::IsMember({"canonical", "random"}))
      ->capture_default_str();
  curves->add_option("--seed", seed, "seed of the random path")->capture_default_str();
  curves->add_option("--intervals", intervals, "initial grid intervals (0 = automatic)");
  curves->add_option("--out", out, "CSV file, or JSON when it ends in .json");

  auto* report = app.add_subcommand("report", "run every identity and aggregate");
  report->add_option("--corpus", corpus_path)->required();
  report->add_option("--out", out, "summary file (default stdout)");
  report->add_option("--workers", workers, "worker threads (0 = hardware)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) return cmd_gen(count, seed, classes, out);
    if (*verify) return cmd_verify(corpus_path, theorem, out, workers);
    if (*curves) return cmd_curves(corpus_path, case_id, path_kind, seed, intervals, out);
    if (*report) return cmd_report(corpus_path, out, workers);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
