#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "ratroot/alphabet.hpp"
#include "ratroot/engine.hpp"

namespace ratroot {

inline constexpr const char* kToolVersion = "1.0.0";

nlohmann::json config_json(const AlphabetOptions& opt);

nlohmann::json report_json(const SqrtInput& input, const Verdict& v, const AlphabetOptions& opt, double seconds);
nlohmann::json report_json(const std::vector<AlphabetEntry>& roots, const AlphabetVerdict& v,
                           const AlphabetOptions& opt, double seconds);

/// Singular points of the branch curve of a bivariate radicand. Throws
/// NotBivariate when the reduced radicand has another number of variables.
class NotBivariate : public Error {
 public:
  explicit NotBivariate(size_t n)
      : Error("radicand needs 2 effective variables after reduction, found " + std::to_string(n)) {}
};
nlohmann::json singularities_json(const SqrtInput& input, const AlphabetOptions& opt);

/// Problems with a report document; empty when it matches the schema.
std::vector<std::string> validate_report(const nlohmann::json& report);

/// Copy of a report with every "timings" member removed.
nlohmann::json without_timings(const nlohmann::json& report);

/// Human-readable rendering; the first line is "outcome: <token>".
std::string render_text(const nlohmann::json& report, bool witness, bool trace);

/// A substitution written as {"X": "expr", ...}; unlisted variables map to
/// themselves.
RationalMap parse_map(const nlohmann::json& spec, const std::vector<std::string>& vars);

struct CorpusResult {
  nlohmann::json reports = nlohmann::json::array();  // {name, expected, report}
  std::vector<std::string> lines;                     // scoreboard
  int mismatches = 0;
};

/// Runs every entry of a corpus document (a non-empty JSON list). Throws
/// SchemaError on malformed entries.
CorpusResult run_corpus(const nlohmann::json& corpus, const AlphabetOptions& opt);

}  // namespace ratroot
