#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ratroot/geometry.hpp"
#include "ratroot/mpoly.hpp"
#include "ratroot/parser.hpp"

namespace ratroot {

enum class Outcome { Rationalizable, NotRationalizable, Inconclusive };
std::string to_string(Outcome o);
Outcome outcome_from_string(const std::string& s);

/// One rule application in a certificate.
struct Step {
  std::string rule;
  std::string paper_ref;
  std::string input;  // polynomial the rule was applied to
  nlohmann::json data = nlohmann::json::object();
  bool terminal = false;  // this step decided the outcome
  double seconds = 0;
};

struct EngineConfig {
  int max_height = 50;
  long scan_budget = 20000;
  double timeout = 30;  // seconds per rule
  int threads = 1;
  size_t max_subset_size = 12;
};

struct Verdict {
  Outcome outcome = Outcome::Inconclusive;
  std::optional<RationalMap> witness;
  std::optional<RationalFunction> root;  // image of sqrt under the witness
  bool existence_by_theorem = false;
  MultiPoly reduced;  // squarefree radicand the cascade worked on
  std::vector<Step> steps;
  std::vector<SingularityRecord> singularities;
};

/// The decision cascade for sqrt(numerator / denominator).
Verdict decide(const SqrtInput& input, const EngineConfig& config = {});

/// Cascade entry points for a squarefree, nonconstant f in its effective
/// variables.
Verdict decide_univariate(const MultiPoly& f, const EngineConfig& config = {});
Verdict decide_bivariate(const MultiPoly& f, const EngineConfig& config = {});

nlohmann::json to_json(const AlgebraicPoint& p);
nlohmann::json to_json(const SingularityRecord& r);
nlohmann::json to_json(const RationalMap& m);

}  // namespace ratroot
