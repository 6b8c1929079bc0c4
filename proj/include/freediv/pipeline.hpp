#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "freediv/json_io.hpp"
#include "freediv/obstruction.hpp"

namespace freediv {

// ------------------------------------------------------------- constructors

/// Output of one constructor run. `certificate` is absent when the
/// constructor itself decided non-freeness (cone family with gamma_2 = gamma_3 = 0).
struct ConstructResult {
  std::string kind;
  std::optional<SaitoCertificate> certificate;
  Json extra = Json::object();
};

/// kind: binomial | triangular | brieskorn | compose | sum-compose | tangent |
/// jets | iterate | cone; params as documented in docs/json_schemas.md.
ConstructResult construct(const std::string& kind, const Json& params);

/// Frame specs: "nc:x1,x2", "curve:<expr>:<w1>,<w2>", "brieskorn:<t1>,<t2>:<prefix>".
FramedDivisor frame_from_spec(const std::string& spec);

/// Rows and entries re-expressed over `ctx` (same names, any order); re-verified against f.
SaitoCertificate transport_certificate(const SaitoCertificate& c, const Polynomial& f);

// ------------------------------------------------------------ auto-certify

enum class Verdict { Free, NotFree, Inconclusive };
const char* to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct AutoOptions {
  bool smooth_asserted = false;
  std::optional<std::uint32_t> bound;
};

struct RouteCertificate {
  std::string route;
  SaitoCertificate certificate;
};
struct RouteReport {
  std::string route;
  ObstructionReport report;
};
struct RouteNote {
  std::string route;
  std::string message;
};

struct AutoOutcome {
  std::vector<RouteCertificate> certificates;
  std::vector<RouteReport> reports;
  std::vector<RouteNote> notes;

  /// Free when some route certified, NotFree when some report concluded so.
  /// Throws CrossCheckError when both happen.
  Verdict verdict() const;
};

/// Runs every applicable route: squarefree monomial, binomial classification,
/// three-variable Euler criterion, plane curve with a unit field, and the
/// (x_i f_i) routes when f = x_1...x_n h. A route that does not apply leaves a note.
AutoOutcome auto_certify(const Polynomial& f, const AutoOptions& opt = {});

Json outcome_to_json(const AutoOutcome& o);

/// Euler annihilators, homogeneity, binomial classification and auto-certify.
Json analyze(const Polynomial& f, const AutoOptions& opt = {});

// ------------------------------------------------------------------ corpus

struct CorpusEntry {
  std::string id;
  std::vector<std::string> vars;
  std::string f;
  std::optional<Json> matrix;
  /// {"kind": ..., "params": {...}} run through construct().
  std::optional<Json> recipe;
  Verdict expect = Verdict::Inconclusive;
  std::string source;
  bool smooth = false;
};

std::vector<CorpusEntry> load_corpus(const Json& j);

struct CorpusResult {
  std::string id;
  Verdict expect = Verdict::Inconclusive;
  std::optional<Verdict> got;
  bool passed = false;
  std::string source;
  std::string detail;
  /// Error category when the pipeline threw.
  std::optional<ErrorKind> error;
};

/// Evaluates one entry: explicit matrix, recipe, then every auto route.
CorpusResult run_entry(const CorpusEntry& e);

/// Entries run on `threads` workers in a seed-shuffled order; the result is sorted by id.
std::vector<CorpusResult> run_corpus(const std::vector<CorpusEntry>& entries, unsigned threads,
                                     std::uint64_t seed);

Json corpus_results_to_json(const std::vector<CorpusResult>& results);
std::string corpus_table(const std::vector<CorpusResult>& results);

}  // namespace freediv
