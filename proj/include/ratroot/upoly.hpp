#pragma once

#include <cassert>
#include <string>
#include <utility>
#include <vector>

#include "ratroot/error.hpp"
#include "ratroot/rational.hpp"

namespace ratroot {

inline std::string coeff_string(const Rational& q) { return to_string(q); }

/// Dense univariate polynomial over a field, lowest degree first.
///
/// T is Rational or NfElem; the only requirements are the field
/// operators, construction from an int, and an `is_zero_value` overload.
template <class T>
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  UniPoly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static UniPoly constant(const T& c) { return UniPoly(std::vector<T>{c}); }
  static UniPoly monomial(const T& c, int deg) {
    std::vector<T> v(static_cast<size_t>(deg) + 1, T(0));
    v[deg] = c;
    return UniPoly(std::move(v));
  }
  static UniPoly x() { return monomial(T(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : T(0); }
  const T& lead() const {
    assert(!c_.empty());
    return c_.back();
  }

  UniPoly operator-() const {
    UniPoly r = *this;
    for (auto& a : r.c_) a = -a;
    return r;
  }
  UniPoly& operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (is_zero_value(a.c_[i])) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(r));
  }
  friend UniPoly operator*(const T& s, const UniPoly& a) {
    if (is_zero_value(s)) return UniPoly();
    UniPoly r = a;
    for (auto& c : r.c_) c = s * c;
    r.trim();
    return r;
  }
  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (size_t i = 0; i < a.c_.size(); ++i)
      if (!is_zero_value(T(a.c_[i] - b.c_[i]))) return false;
    return true;
  }

  UniPoly monic() const {
    if (is_zero()) return *this;
    T inv = T(1) / lead();
    return inv * (*this);
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<T> r(c_.size() - 1, T(0));
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = T(static_cast<long>(i)) * c_[i];
    return UniPoly(std::move(r));
  }

  T eval(const T& x) const {
    T acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  /// this(inner(x))
  UniPoly compose(const UniPoly& inner) const {
    UniPoly acc;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * inner + constant(c_[i]);
    return acc;
  }

  UniPoly pow(int e) const {
    UniPoly r = constant(T(1)), b = *this;
    while (e > 0) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim() {
    while (!c_.empty() && is_zero_value(c_.back())) c_.pop_back();
  }
  std::vector<T> c_;
};

template <class T>
std::pair<UniPoly<T>, UniPoly<T>> divmod(const UniPoly<T>& a, const UniPoly<T>& b) {
  if (b.is_zero()) throw ZeroInversion();
  if (a.degree() < b.degree()) return {UniPoly<T>(), a};
  std::vector<T> r = a.coeffs();
  std::vector<T> q(static_cast<size_t>(a.degree() - b.degree()) + 1, T(0));
  const int db = b.degree();
  T inv = T(1) / b.lead();
  for (int i = a.degree(); i >= db; --i) {
    if (is_zero_value(r[i])) continue;
    T t = r[i] * inv;
    q[i - db] = t;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= t * b.coeffs()[j];
  }
  r.resize(static_cast<size_t>(db));
  return {UniPoly<T>(std::move(q)), UniPoly<T>(std::move(r))};
}

template <class T>
UniPoly<T> operator%(const UniPoly<T>& a, const UniPoly<T>& b) {
  return divmod(a, b).second;
}

/// Monic gcd; gcd(0, 0) = 0.
template <class T>
UniPoly<T> gcd(UniPoly<T> a, UniPoly<T> b) {
  if (!b.is_zero()) b = b.monic();
  while (!b.is_zero()) {
    UniPoly<T> r = divmod(a, b).second;
    a = std::move(b);
    b = r.is_zero() ? std::move(r) : r.monic();
  }
  return a.monic();
}

/// Returns (g, s, t) with s*a + t*b = g, g monic.
template <class T>
struct ExtGcd {
  UniPoly<T> g, s, t;
};

template <class T>
ExtGcd<T> ext_gcd(const UniPoly<T>& a, const UniPoly<T>& b) {
  UniPoly<T> r0 = a, r1 = b;
  UniPoly<T> s0 = UniPoly<T>::constant(T(1)), s1;
  UniPoly<T> t0, t1 = UniPoly<T>::constant(T(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UniPoly<T> s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    UniPoly<T> t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  T inv = T(1) / r0.lead();
  return {inv * r0, inv * s0, inv * t0};
}

/// Resultant over a field, by the Euclidean recurrence.
template <class T>
T resultant(UniPoly<T> a, UniPoly<T> b) {
  if (a.is_zero() || b.is_zero()) return T(0);
  T acc(1);
  while (true) {
    int da = a.degree(), db = b.degree();
    if (db == 0) {
      T r = acc;
      for (int i = 0; i < da; ++i) r *= b.lead();
      return r;
    }
    if (da < db) {
      if ((da * db) % 2 == 1) acc = -acc;
      std::swap(a, b);
      continue;
    }
    UniPoly<T> r = divmod(a, b).second;
    if (r.is_zero()) return T(0);
    if ((da * db) % 2 == 1) acc = -acc;
    for (int i = 0; i < da - r.degree(); ++i) acc *= b.lead();
    a = std::move(b);
    b = std::move(r);
  }
}

/// p = unit * prod(f_i ^ m_i) with each f_i monic, squarefree, pairwise coprime.
template <class T>
struct SquarefreeDecomposition {
  T unit{0};
  std::vector<std::pair<UniPoly<T>, int>> factors;
};

/// Yun's algorithm (characteristic zero).
template <class T>
SquarefreeDecomposition<T> squarefree_decomposition(const UniPoly<T>& p) {
  SquarefreeDecomposition<T> out;
  if (p.is_zero()) return out;
  out.unit = p.lead();
  UniPoly<T> f = p.monic();
  if (f.degree() == 0) return out;
  UniPoly<T> fp = f.derivative();
  UniPoly<T> c = gcd(f, fp);
  UniPoly<T> w = divmod(f, c).first;
  UniPoly<T> y = divmod(fp, c).first;
  UniPoly<T> z = y - w.derivative();
  int i = 1;
  while (w.degree() > 0) {
    UniPoly<T> g = gcd(w, z);
    if (g.degree() > 0) out.factors.emplace_back(g, i);
    w = divmod(w, g).first;
    y = divmod(z, g).first;
    z = y - w.derivative();
    ++i;
  }
  return out;
}

/// Product of the factors of odd multiplicity, monic.
template <class T>
UniPoly<T> odd_part(const UniPoly<T>& p) {
  UniPoly<T> r = UniPoly<T>::constant(T(1));
  for (const auto& [f, m] : squarefree_decomposition(p).factors)
    if (m % 2 == 1) r = r * f;
  return r;
}

template <class T>
std::string UniPoly<T>::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string s;
  for (size_t i = c_.size(); i-- > 0;) {
    if (is_zero_value(c_[i])) continue;
    std::string cs = "(" + coeff_string(c_[i]) + ")";
    if (!s.empty()) s += " + ";
    if (i == 0)
      s += cs;
    else
      s += cs + "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
  }
  return s;
}

using QPoly = UniPoly<Rational>;

}  // namespace ratroot
