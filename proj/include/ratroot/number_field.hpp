#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ratroot/rational.hpp"
#include "ratroot/upoly.hpp"

namespace ratroot {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// Element of Q or of a number-field tower Q ⊂ K1 ⊂ K2.
///
/// Representation is canonical: an element that lies in a smaller level of
/// the tower is always stored at that level, so a rational value never
/// carries a field pointer. Elements of different levels of the same tower
/// mix freely; elements of unrelated fields raise IncompatibleFields.
class NfElem {
 public:
  NfElem() : q_(0) {}
  NfElem(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  NfElem(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  NfElem(const Rational& q) : q_(q) {}  // NOLINT(google-explicit-constructor)

  /// The generator of `field`.
  static NfElem generator(const FieldPtr& field);
  /// Element of `field` with the given coefficients (over the base level)
  /// in powers of its generator; reduced on construction.
  static NfElem from_coeffs(const FieldPtr& field, std::vector<NfElem> coeffs);

  bool is_zero() const { return !field_ && sgn(q_) == 0; }
  bool is_one() const { return !field_ && q_ == 1; }
  bool is_rational() const { return !field_; }
  const Rational& rational() const { return q_; }
  const FieldPtr& field() const { return field_; }
  /// Coefficients over the base level (empty when rational).
  const std::vector<NfElem>& coeffs() const { return c_; }

  NfElem operator-() const;
  NfElem inverse() const;
  NfElem& operator+=(const NfElem& o);
  NfElem& operator-=(const NfElem& o);
  NfElem& operator*=(const NfElem& o);
  NfElem& operator/=(const NfElem& o) { return *this *= o.inverse(); }
  friend NfElem operator+(NfElem a, const NfElem& b) { return a += b; }
  friend NfElem operator-(NfElem a, const NfElem& b) { return a -= b; }
  friend NfElem operator*(NfElem a, const NfElem& b) { return a *= b; }
  friend NfElem operator/(NfElem a, const NfElem& b) { return a /= b; }
  friend bool operator==(const NfElem& a, const NfElem& b);
  friend bool operator!=(const NfElem& a, const NfElem& b) { return !(a == b); }

  /// Polynomial expression in the generator names, e.g. "(1/2*a + 3)".
  std::string to_string() const;

 private:
  void normalize();
  FieldPtr field_;
  Rational q_;
  std::vector<NfElem> c_;
};

inline bool is_zero_value(const NfElem& e) { return e.is_zero(); }
inline std::string coeff_string(const NfElem& e) { return e.to_string(); }

/// One level of a tower: base[t] / (minpoly(t)).
class NumberField {
 public:
  /// `minpoly` must be monic and irreducible over `base` (nullptr = Q), of
  /// degree >= 2. Throws TowerTooDeep beyond height two.
  static FieldPtr make(FieldPtr base, UniPoly<NfElem> minpoly, std::string name);

  const FieldPtr& base() const { return base_; }
  const UniPoly<NfElem>& minpoly() const { return minpoly_; }
  const std::string& name() const { return name_; }
  int degree() const { return minpoly_.degree(); }
  int height() const { return height_; }
  int absolute_degree() const;
  /// True if `other` is this field or one of its ancestors (nullptr counts).
  bool contains(const NumberField* other) const;
  /// Human-readable tower description: "a: a^2 - 2; b: b^2 - a".
  std::string describe() const;

 private:
  NumberField() = default;
  FieldPtr base_;
  UniPoly<NfElem> minpoly_;
  std::string name_;
  int height_ = 1;
};

/// Field containing both (the deeper one of the two); throws if unrelated.
FieldPtr common_field(const FieldPtr& a, const FieldPtr& b);

}  // namespace ratroot
