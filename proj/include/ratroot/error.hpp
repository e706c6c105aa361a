#pragma once

#include <stdexcept>
#include <string>

namespace ratroot {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ZeroInversion : public Error {
 public:
  ZeroInversion() : Error("inversion of zero") {}
};

class IncompatibleFields : public Error {
 public:
  IncompatibleFields() : Error("coefficients live in unrelated number fields") {}
};

/// A computation needs something the engine deliberately does not support
/// (for example a number-field tower deeper than two levels).
class Unsupported : public Error {
 public:
  explicit Unsupported(const std::string& what) : Error(what) {}
};

class TowerTooDeep : public Unsupported {
 public:
  TowerTooDeep() : Unsupported("algebraic point needs a number-field tower of height > 2") {}
};

class UndefinedVariable : public Error {
 public:
  explicit UndefinedVariable(const std::string& name)
      : Error("no assignment for variable '" + name + "'") {}
};

class ZeroRadicand : public Error {
 public:
  ZeroRadicand() : Error("radicand is zero") {}
};

class OddDegree : public Error {
 public:
  OddDegree() : Error("dehomogenization requires even total degree") {}
};

class NonReduced : public Error {
 public:
  explicit NonReduced(const std::string& what) : Error("non-reduced input: " + what) {}
};

class NonIsolated : public Error {
 public:
  NonIsolated() : Error("singular point is not isolated") {}
};

class WrongMultiplicity : public Error {
 public:
  WrongMultiplicity() : Error("projection center does not have multiplicity D-1") {}
};

class DegenerateProjection : public Error {
 public:
  DegenerateProjection() : Error("projection from the point is degenerate") {}
};

/// Raised when a cooperative deadline expires inside a long computation.
class ResourceExhausted : public Error {
 public:
  explicit ResourceExhausted(const std::string& what) : Error(what) {}
};

/// Internal consistency check failed; never converted into a verdict.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error("internal error: " + what) {}
};

}  // namespace ratroot
