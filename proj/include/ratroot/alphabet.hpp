#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ratroot/engine.hpp"

namespace ratroot {

class TooManyRoots : public Error {
 public:
  TooManyRoots(size_t n, size_t cap)
      : Error("alphabet has " + std::to_string(n) + " roots; the subset limit is " + std::to_string(cap)) {}
};

struct SubsetProduct {
  std::vector<size_t> subset;  // 0-based, increasing
  MultiPoly product;           // squarefree part of the product
};

/// Every non-empty subset: by size, then lexicographically.
std::vector<SubsetProduct> subset_products(const std::vector<MultiPoly>& roots, size_t cap = 12);

struct SubsetCertificate {
  std::vector<size_t> subset;
  MultiPoly product;
  Verdict verdict;
};

struct SubsetAudit {
  std::vector<size_t> subset;
  int degree = 0;
  Outcome outcome = Outcome::Inconclusive;
  std::string rule;  // rule of the last step
};

struct AlphabetOptions {
  EngineConfig engine;
  size_t ordering_budget = 24;
  /// Substitutions tried before the engine's own witness at every step.
  std::vector<RationalMap> seeds;
};

struct AlphabetVerdict {
  Outcome outcome = Outcome::Inconclusive;
  std::optional<RationalMap> witness;
  std::vector<RationalFunction> roots;  // images of the square roots
  std::optional<SubsetCertificate> certificate;
  std::vector<SubsetAudit> audit;
  std::vector<std::string> trace;
  std::vector<std::string> warnings;
  std::optional<std::string> dehomogenized_by;
  std::vector<std::string> vars;
};

/// Rationalize the roots one after another, substituting each witness into
/// the rest. Empty when the search fails; that is not a proof of anything.
std::optional<RationalMap> sequential_rationalize(const std::vector<RationalFunction>& roots,
                                                  const AlphabetOptions& opt = {},
                                                  std::vector<std::string>* trace = nullptr);

AlphabetVerdict decide_alphabet(const std::vector<AlphabetEntry>& roots, const AlphabetOptions& opt = {});

}  // namespace ratroot
