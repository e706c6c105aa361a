#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ratroot/number_field.hpp"

namespace ratroot {

using Exponent = std::vector<int>;

/// Graded lexicographic order, larger monomials first.
struct GrlexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

int exponent_degree(const Exponent& e);

/// Sparse multivariate polynomial with coefficients in Q or a number field.
///
/// Terms are kept in descending grlex order with no zero coefficients, so
/// equality is representational once the variable lists agree.
class MultiPoly {
 public:
  using Terms = std::map<Exponent, NfElem, GrlexGreater>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static MultiPoly constant(const std::vector<std::string>& vars, const NfElem& c);
  static MultiPoly variable(const std::vector<std::string>& vars, size_t i);
  static MultiPoly monomial(const std::vector<std::string>& vars, Exponent e, const NfElem& c);

  const std::vector<std::string>& vars() const { return vars_; }
  size_t nvars() const { return vars_.size(); }
  const Terms& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  NfElem constant_value() const;  // requires is_constant()
  int total_degree() const;        // -1 for zero
  int min_degree() const;          // lowest total degree of a term; -1 for zero
  int degree_in(size_t i) const;   // -1 for zero
  bool involves(size_t i) const { return degree_in(i) > 0; }
  NfElem coeff(const Exponent& e) const;
  const Exponent& leading_exponent() const { return terms_.begin()->first; }
  const NfElem& leading_coeff() const { return terms_.begin()->second; }

  /// Adds c * x^e in place.
  void add_term(const Exponent& e, const NfElem& c);

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const NfElem& s, const MultiPoly& a);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }
  MultiPoly pow(int e) const;

  MultiPoly derivative(size_t i) const;
  NfElem eval(const std::vector<NfElem>& point) const;
  /// Replace variable i by a value; the variable stays in the ring.
  MultiPoly substitute_value(size_t i, const NfElem& v) const;
  /// Replace every variable i by images[i]; all images share one ring,
  /// which becomes the ring of the result.
  MultiPoly compose(const std::vector<MultiPoly>& images) const;
  MultiPoly homogeneous_part(int k) const;

  bool is_rational() const;
  /// Common field of all coefficients (nullptr for Q).
  FieldPtr field() const;
  /// Scaled so that the leading coefficient is 1 (zero stays zero).
  MultiPoly monic() const;

  /// Coefficients with respect to variable i, lowest first; each lies in
  /// the same ring and does not involve variable i.
  std::vector<MultiPoly> coeffs_in(size_t i) const;
  static MultiPoly from_coeffs_in(const std::vector<std::string>& vars, size_t i,
                                  const std::vector<MultiPoly>& cs);

  /// Re-express in another variable list (matched by name). Throws
  /// UndefinedVariable if a variable in use is missing from `vars`.
  MultiPoly with_vars(const std::vector<std::string>& vars) const;

  UniPoly<NfElem> to_univariate(size_t i) const;
  static MultiPoly from_univariate(const std::vector<std::string>& vars, size_t i,
                                   const UniPoly<NfElem>& p);

  /// Printed in the input grammar, terms in descending grlex order.
  std::string to_string() const;

 private:
  std::vector<std::string> vars_;
  Terms terms_;
};

/// Index of `name` in `vars`, or -1.
int var_index(const std::vector<std::string>& vars, const std::string& name);

/// a / b if b divides a exactly.
std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b);
/// Exact quotient; throws InternalError if b does not divide a.
MultiPoly divide(const MultiPoly& a, const MultiPoly& b);

/// Monic greatest common divisor (gcd(0, 0) = 0).
MultiPoly mgcd(const MultiPoly& a, const MultiPoly& b);

/// p = unit * prod(f_i ^ m_i), f_i monic, squarefree, pairwise coprime.
struct MSquarefree {
  NfElem unit{0};
  std::vector<std::pair<MultiPoly, int>> factors;
};
MSquarefree squarefree_decomposition(const MultiPoly& p);

/// Monic product of the odd-multiplicity factors; constants give 1.
MultiPoly squarefree_part(const MultiPoly& p);

/// p = unit * f * h^2 with f = squarefree_part(p).
struct SquareReduction {
  MultiPoly f;
  NfElem unit{1};
  MultiPoly h;
};
SquareReduction square_reduce(const MultiPoly& p);
/// square_reduce(p * q), without multiplying when p and q are coprime.
SquareReduction square_reduce(const MultiPoly& p, const MultiPoly& q);

/// squarefree_part(p * q); throws ZeroRadicand when p is zero.
MultiPoly radicand_reduce(const MultiPoly& p, const MultiPoly& q);

std::vector<std::string> effective_vars(const MultiPoly& f);
/// f re-read in the ring of its effective variables (order preserved).
MultiPoly restrict_to_effective(const MultiPoly& f);

std::optional<int> is_homogeneous(const MultiPoly& f);
/// Homogenize with a new variable placed first, to total degree `degree`
/// (default: the total degree of f).
MultiPoly homogenize(const MultiPoly& f, const std::string& name, int degree = -1);
/// Set `var` to 1, drop it from the ring and take the squarefree part.
/// Throws OddDegree for odd total degree.
MultiPoly dehomogenize(const MultiPoly& f, const std::string& var);

/// Element of Frac R in lowest terms with monic denominator.
class RationalMap;

class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(MultiPoly num);
  RationalFunction(MultiPoly num, MultiPoly den);

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  const std::vector<std::string>& vars() const { return num_.vars(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  int degree() const { return std::max(num_.total_degree(), den_.total_degree()); }

  RationalFunction operator-() const;
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  RationalFunction pow(int e) const;

  std::string to_string() const;

 private:
  friend RationalFunction substitute(const MultiPoly& f, const RationalMap& m);
  // num/den already coprime; only the leading coefficient of den is fixed
  static RationalFunction coprime(MultiPoly num, MultiPoly den);

  MultiPoly num_, den_;
};

/// Substitution X_i -> assignment_i from the source ring into Frac of the
/// target ring.
class RationalMap {
 public:
  RationalMap() = default;
  RationalMap(std::vector<std::string> source, std::vector<std::string> target,
              std::vector<RationalFunction> assignments);
  static RationalMap identity(const std::vector<std::string>& vars);

  const std::vector<std::string>& source() const { return source_; }
  const std::vector<std::string>& target() const { return target_; }
  const std::vector<RationalFunction>& assignments() const { return assign_; }
  /// Assignment of a source variable by name (nullptr if absent).
  const RationalFunction* assignment(const std::string& var) const;
  bool is_nonconstant() const;
  FieldPtr field() const;

  friend bool operator==(const RationalMap& a, const RationalMap& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.assign_ == b.assign_;
  }

 private:
  std::vector<std::string> source_, target_;
  std::vector<RationalFunction> assign_;
};

/// Image of f under m; f's effective variables must all be assigned.
RationalFunction substitute(const MultiPoly& f, const RationalMap& m);
RationalFunction substitute(const RationalFunction& f, const RationalMap& m);

/// Apply outer first, then inner: substitute(f, compose(o, i)) equals
/// substitute(substitute(f, o), i).
RationalMap compose(const RationalMap& outer, const RationalMap& inner);

/// h with h^2 = g, if it exists over the coefficient field of g.
std::optional<RationalFunction> is_perfect_square(const RationalFunction& g);

}  // namespace ratroot
