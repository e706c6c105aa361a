#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ratroot/error.hpp"
#include "ratroot/mpoly.hpp"

namespace ratroot {

class SyntaxError : public Error {
 public:
  SyntaxError(size_t offset, std::vector<std::string> expected, const std::string& detail = "");
  size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  size_t offset_;
  std::vector<std::string> expected_;
};

class ZeroDenominator : public Error {
 public:
  ZeroDenominator() : Error("division by zero") {}
};

class NonIntegerExponent : public Error {
 public:
  explicit NonIntegerExponent(size_t offset)
      : Error("exponent at offset " + std::to_string(offset) + " is not an integer") {}
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Per-entry failures while reading an alphabet, with their indices.
class AlphabetParseError : public Error {
 public:
  explicit AlphabetParseError(std::vector<std::pair<size_t, std::string>> failures);
  const std::vector<std::pair<size_t, std::string>>& failures() const { return failures_; }

 private:
  std::vector<std::pair<size_t, std::string>> failures_;
};

/// The quantity sqrt(numerator / denominator) over a declared variable list.
struct SqrtInput {
  MultiPoly numerator;
  MultiPoly denominator;
  std::vector<std::string> vars;

  friend bool operator==(const SqrtInput& a, const SqrtInput& b) {
    return a.vars == b.vars && a.numerator == b.numerator && a.denominator == b.denominator;
  }
};

/// Parse an expression into a reduced fraction. Variables are taken from
/// `vars` when given, otherwise in order of first appearance.
SqrtInput parse_radicand(std::string_view text,
                         const std::optional<std::vector<std::string>>& vars = std::nullopt);

/// Parse an expression that must be a polynomial in `vars`.
MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& vars);

/// Inverse of parse_radicand (given the same variable list).
std::string to_string(const SqrtInput& in);

struct AlphabetEntry {
  SqrtInput input;
  std::string label;
};

/// All entries share one variable list: the declared one, or the union of
/// the inferred lists in order of first appearance.
std::vector<AlphabetEntry> parse_alphabet(const std::string& document);

}  // namespace ratroot
