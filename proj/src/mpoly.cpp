#include "ratroot/mpoly.hpp"

#include <cstdint>
#include <numeric>
#include <sstream>

#include "ratroot/deadline.hpp"
#include "ratroot/factor.hpp"

namespace ratroot {

bool GrlexGreater::operator()(const Exponent& a, const Exponent& b) const {
  int da = exponent_degree(a), db = exponent_degree(b);
  if (da != db) return da > db;
  return a > b;
}

int exponent_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

int var_index(const std::vector<std::string>& vars, const std::string& name) {
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i] == name) return static_cast<int>(i);
  return -1;
}

// ---- MultiPoly -----------------------------------------------------------

MultiPoly MultiPoly::constant(const std::vector<std::string>& vars, const NfElem& c) {
  MultiPoly p(vars);
  p.add_term(Exponent(vars.size(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(const std::vector<std::string>& vars, size_t i) {
  Exponent e(vars.size(), 0);
  e[i] = 1;
  return monomial(vars, std::move(e), NfElem(1));
}

MultiPoly MultiPoly::monomial(const std::vector<std::string>& vars, Exponent e, const NfElem& c) {
  MultiPoly p(vars);
  p.add_term(e, c);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && exponent_degree(terms_.begin()->first) == 0);
}

NfElem MultiPoly::constant_value() const { return terms_.empty() ? NfElem(0) : coeff(Exponent(nvars(), 0)); }

int MultiPoly::total_degree() const {
  return terms_.empty() ? -1 : exponent_degree(terms_.begin()->first);
}

int MultiPoly::min_degree() const {
  if (terms_.empty()) return -1;
  return exponent_degree(terms_.rbegin()->first);
}

int MultiPoly::degree_in(size_t i) const {
  if (terms_.empty()) return -1;
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[i]);
  return d;
}

NfElem MultiPoly::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? NfElem(0) : it->second;
}

void MultiPoly::add_term(const Exponent& e, const NfElem& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (vars_.empty() && terms_.empty()) vars_ = o.vars_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (vars_.empty() && terms_.empty()) vars_ = o.vars_;
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r(a.vars_.empty() ? b.vars_ : a.vars_);
  const size_t n = r.nvars();
  Exponent e(n);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

MultiPoly operator*(const NfElem& s, const MultiPoly& a) {
  MultiPoly r(a.vars_);
  if (s.is_zero()) return r;
  for (const auto& [e, c] : a.terms_) r.terms_.emplace_hint(r.terms_.end(), e, s * c);
  return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  auto it = b.terms_.begin();
  for (const auto& [e, c] : a.terms_) {
    if (e != it->first || c != it->second) return false;
    ++it;
  }
  return true;
}

MultiPoly MultiPoly::pow(int e) const {
  MultiPoly r = constant(vars_, NfElem(1)), b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

MultiPoly MultiPoly::derivative(size_t i) const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponent f = e;
    --f[i];
    r.add_term(f, NfElem(e[i]) * c);
  }
  return r;
}

NfElem MultiPoly::eval(const std::vector<NfElem>& point) const {
  NfElem acc(0);
  std::vector<std::vector<NfElem>> powers(nvars());
  for (const auto& [e, c] : terms_) {
    NfElem t = c;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(NfElem(1));
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * point[i]);
      t *= pw[e[i]];
    }
    acc += t;
  }
  return acc;
}

MultiPoly MultiPoly::substitute_value(size_t i, const NfElem& v) const {
  MultiPoly r(vars_);
  std::vector<NfElem> pw{NfElem(1)};
  for (const auto& [e, c] : terms_) {
    while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * v);
    Exponent f = e;
    f[i] = 0;
    r.add_term(f, c * pw[e[i]]);
  }
  return r;
}

MultiPoly MultiPoly::compose(const std::vector<MultiPoly>& images) const {
  if (images.size() != nvars()) throw InternalError("compose: wrong number of images");
  std::vector<std::string> tv = images.empty() ? std::vector<std::string>{} : images[0].vars();
  MultiPoly r(tv);
  std::vector<std::vector<MultiPoly>> powers(nvars());
  for (const auto& [e, c] : terms_) {
    MultiPoly t = constant(tv, c);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(constant(tv, NfElem(1)));
      while (static_cast<int>(pw.size()) <= e[i]) pw.push_back(pw.back() * images[i]);
      t = t * pw[e[i]];
    }
    r += t;
  }
  return r;
}

MultiPoly MultiPoly::homogeneous_part(int k) const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_)
    if (exponent_degree(e) == k) r.terms_.emplace(e, c);
  return r;
}

bool MultiPoly::is_rational() const {
  for (const auto& [e, c] : terms_)
    if (!c.is_rational()) return false;
  return true;
}

FieldPtr MultiPoly::field() const {
  FieldPtr f;
  for (const auto& [e, c] : terms_) f = common_field(f, c.field());
  return f;
}

MultiPoly MultiPoly::monic() const {
  if (terms_.empty() || leading_coeff().is_one()) return *this;
  return leading_coeff().inverse() * (*this);
}

std::vector<MultiPoly> MultiPoly::coeffs_in(size_t i) const {
  std::vector<MultiPoly> out(static_cast<size_t>(std::max(degree_in(i), 0)) + 1, MultiPoly(vars_));
  for (const auto& [e, c] : terms_) {
    Exponent f = e;
    f[i] = 0;
    out[e[i]].add_term(f, c);
  }
  return out;
}

MultiPoly MultiPoly::from_coeffs_in(const std::vector<std::string>& vars, size_t i,
                                    const std::vector<MultiPoly>& cs) {
  MultiPoly r(vars);
  for (size_t k = 0; k < cs.size(); ++k)
    for (const auto& [e, c] : cs[k].terms_) {
      Exponent f = e;
      f[i] += static_cast<int>(k);
      r.add_term(f, c);
    }
  return r;
}

MultiPoly MultiPoly::with_vars(const std::vector<std::string>& vars) const {
  std::vector<int> map(nvars());
  for (size_t i = 0; i < nvars(); ++i) map[i] = var_index(vars, vars_[i]);
  MultiPoly r(vars);
  for (const auto& [e, c] : terms_) {
    Exponent f(vars.size(), 0);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (map[i] < 0) throw UndefinedVariable(vars_[i]);
      f[map[i]] = e[i];
    }
    r.terms_.emplace(std::move(f), c);
  }
  return r;
}

UniPoly<NfElem> MultiPoly::to_univariate(size_t i) const {
  std::vector<NfElem> c(static_cast<size_t>(std::max(degree_in(i), 0)) + 1, NfElem(0));
  for (const auto& [e, v] : terms_) {
    for (size_t j = 0; j < e.size(); ++j)
      if (j != i && e[j] != 0) throw InternalError("to_univariate: polynomial is not univariate");
    c[e[i]] = v;
  }
  return UniPoly<NfElem>(std::move(c));
}

MultiPoly MultiPoly::from_univariate(const std::vector<std::string>& vars, size_t i,
                                     const UniPoly<NfElem>& p) {
  MultiPoly r(vars);
  Exponent e(vars.size(), 0);
  for (int k = 0; k <= p.degree(); ++k) {
    e[i] = k;
    r.add_term(e, p.coeffs()[k]);
  }
  return r;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string mono;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string coef;
    bool negative = false;
    if (c.is_rational()) {
      Rational q = c.rational();
      negative = sgn(q) < 0;
      Rational a = abs(q);
      if (!(a == 1 && !mono.empty())) coef = a.get_str();
    } else {
      coef = c.to_string();
    }
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (coef.empty())
      os << mono;
    else if (mono.empty())
      os << coef;
    else
      os << coef << "*" << mono;
  }
  return os.str();
}

// ---- division and gcd ----------------------------------------------------

std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw ZeroInversion();
  MultiPoly q(a.vars());
  if (a.is_zero()) return q;
  if (b.is_constant()) return b.constant_value().inverse() * a;
  MultiPoly r = a;
  const Exponent& be = b.leading_exponent();
  const NfElem binv = b.leading_coeff().inverse();
  const size_t n = a.nvars();
  Exponent qe(n), te(n);
  while (!r.is_zero()) {
    const Exponent& re = r.leading_exponent();
    for (size_t i = 0; i < n; ++i) {
      if (re[i] < be[i]) return std::nullopt;
      qe[i] = re[i] - be[i];
    }
    NfElem qc = r.leading_coeff() * binv;
    q.add_term(qe, qc);
    for (const auto& [e, c] : b.terms()) {
      for (size_t i = 0; i < n; ++i) te[i] = qe[i] + e[i];
      r.add_term(te, -(qc * c));
    }
  }
  return q;
}

MultiPoly divide(const MultiPoly& a, const MultiPoly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw InternalError("inexact polynomial division");
  return *q;
}

namespace {

// Index of the last variable occurring in a or b, or -1.
int main_var(const MultiPoly& a, const MultiPoly& b) {
  for (int i = static_cast<int>(std::max(a.nvars(), b.nvars())) - 1; i >= 0; --i)
    if ((i < static_cast<int>(a.nvars()) && a.involves(i)) ||
        (i < static_cast<int>(b.nvars()) && b.involves(i)))
      return i;
  return -1;
}

bool only_var(const MultiPoly& p, size_t v) {
  for (const auto& [e, c] : p.terms())
    for (size_t j = 0; j < e.size(); ++j)
      if (j != v && e[j] != 0) return false;
  return true;
}

MultiPoly content_in(const MultiPoly& p, size_t v) {
  MultiPoly g(p.vars());
  for (const auto& c : p.coeffs_in(v)) {
    if (c.is_zero()) continue;
    g = mgcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

MultiPoly pp_in(const MultiPoly& p, size_t v) {
  if (p.is_zero()) return p;
  return divide(p, content_in(p, v)).monic();
}

// True when a and b are certainly coprime over Q: their images modulo a
// prime that keeps both degrees have a constant gcd. False means unknown.
bool coprime_mod_p(const UniPoly<NfElem>& a, const UniPoly<NfElem>& b) {
  using u64 = std::uint64_t;
  constexpr u64 P = 2147483647;
  auto inv = [](u64 x) {
    u64 r = 1, e = P - 2;
    for (; e; e >>= 1, x = x * x % P)
      if (e & 1) r = r * x % P;
    return r;
  };
  auto image = [&](const UniPoly<NfElem>& f, std::vector<u64>& out) {
    out.assign(f.degree() + 1, 0);
    for (int k = 0; k <= f.degree(); ++k) {
      const NfElem& c = f.coeff(k);
      if (!c.is_rational()) return false;
      u64 num = mpz_fdiv_ui(c.rational().get_num_mpz_t(), P);
      u64 den = mpz_fdiv_ui(c.rational().get_den_mpz_t(), P);
      if (den == 0) return false;
      out[k] = num * inv(den) % P;
    }
    return out.back() != 0;
  };
  std::vector<u64> x, y;
  if (a.is_zero() || b.is_zero() || !image(a, x) || !image(b, y)) return false;
  if (x.size() < y.size()) std::swap(x, y);
  while (y.size() > 1) {
    u64 li = inv(y.back());
    while (x.size() >= y.size()) {
      u64 q = x.back() * li % P;
      size_t shift = x.size() - y.size();
      for (size_t k = 0; k < y.size(); ++k) x[k + shift] = (x[k + shift] + P - q * y[k] % P) % P;
      while (!x.empty() && x.back() == 0) x.pop_back();
    }
    if (x.empty()) return false;
    std::swap(x, y);
  }
  return true;
}

UniPoly<NfElem> ugcd(const UniPoly<NfElem>& a, const UniPoly<NfElem>& b) {
  if (coprime_mod_p(a, b)) return UniPoly<NfElem>::constant(NfElem(1));
  return gcd(a, b);
}

// Pseudo-remainder of a by b in variable v.
MultiPoly prem(MultiPoly a, const MultiPoly& b, size_t v) {
  const int db = b.degree_in(v);
  const std::vector<MultiPoly> bc = b.coeffs_in(v);
  const MultiPoly& lb = bc[db];
  const auto& vars = a.vars();
  while (!a.is_zero()) {
    int da = a.degree_in(v);
    if (da < db) break;
    MultiPoly la = a.coeffs_in(v)[da];
    Exponent e(vars.size(), 0);
    e[v] = da - db;
    a = lb * a - la * MultiPoly::monomial(vars, e, NfElem(1)) * b;
  }
  return a;
}

}  // namespace

MultiPoly mgcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const auto& vars = a.vars();
  if (a.is_constant() || b.is_constant()) return MultiPoly::constant(vars, NfElem(1));
  const int vi = main_var(a, b);
  const size_t v = static_cast<size_t>(vi);
  if (only_var(a, v) && only_var(b, v)) {
    return MultiPoly::from_univariate(vars, v, ugcd(a.to_univariate(v), b.to_univariate(v)));
  }
  if (!a.involves(v)) return mgcd(a, content_in(b, v));
  if (!b.involves(v)) return mgcd(content_in(a, v), b);
  // a specialization of the other variables that keeps both degrees in v
  // bounds deg_v gcd from above; degree 0 leaves only the contents
  for (int trial = 0; trial < 3; ++trial) {
    MultiPoly sa = a, sb = b;
    for (size_t i = 0; i < vars.size(); ++i) {
      if (i == v) continue;
      Rational r(static_cast<long>(2 + i + 5 * trial), 1 + trial);
      r.canonicalize();
      NfElem x(r);
      sa = sa.substitute_value(i, x);
      sb = sb.substitute_value(i, x);
    }
    if (sa.degree_in(v) != a.degree_in(v) || sb.degree_in(v) != b.degree_in(v)) continue;
    if (ugcd(sa.to_univariate(v), sb.to_univariate(v)).degree() > 0) break;
    return mgcd(content_in(a, v), content_in(b, v));
  }
  {
    // a much smaller operand with trivial content: one pseudo-division of
    // the larger by it leaves gcd(prem, small), skipping the large content
    const MultiPoly& small = a.size() < b.size() ? a : b;
    const MultiPoly& large = a.size() < b.size() ? b : a;
    if (4 * small.size() < large.size() && large.degree_in(v) >= small.degree_in(v)) {
      MultiPoly cs = content_in(small, v);
      if (cs.is_constant()) {
        MultiPoly S = small.monic();
        MultiPoly r = prem(large, S, v);
        if (r.is_zero()) return S;
        return mgcd(S, r);
      }
    }
  }
  MultiPoly ca = content_in(a, v), cb = content_in(b, v);
  MultiPoly c = mgcd(ca, cb);
  MultiPoly A = divide(a, ca).monic(), B = divide(b, cb).monic();
  if (A.degree_in(v) < B.degree_in(v)) std::swap(A, B);
  while (true) {
    check_deadline();
    MultiPoly r = prem(A, B, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) {
      B = MultiPoly::constant(vars, NfElem(1));
      break;
    }
    A = std::move(B);
    B = pp_in(r, v);
  }
  return (c * pp_in(B, v)).monic();
}

// ---- squarefree decomposition --------------------------------------------

namespace {

void yun(const MultiPoly& f, size_t v, std::map<int, MultiPoly>& acc) {
  MultiPoly fp = f.derivative(v);
  MultiPoly a0 = mgcd(f, fp);
  MultiPoly w = divide(f, a0);
  MultiPoly y = divide(fp, a0);
  MultiPoly z = y - w.derivative(v);
  int i = 1;
  while (w.degree_in(v) > 0) {
    MultiPoly g = mgcd(w, z);
    if (!g.is_constant()) {
      auto it = acc.find(i);
      if (it == acc.end())
        acc.emplace(i, g);
      else
        it->second = it->second * g;
    }
    w = divide(w, g);
    y = divide(z, g);
    z = y - w.derivative(v);
    ++i;
  }
}

void sqf_rec(const MultiPoly& p, std::map<int, MultiPoly>& acc) {
  if (p.is_constant()) return;
  const int vi = main_var(p, p);
  const size_t v = static_cast<size_t>(vi);
  MultiPoly c = content_in(p, v);
  MultiPoly pp = divide(p, c);
  yun(pp, v, acc);
  sqf_rec(c, acc);
}

}  // namespace

MSquarefree squarefree_decomposition(const MultiPoly& p) {
  MSquarefree out;
  if (p.is_zero()) return out;
  out.unit = p.leading_coeff();
  std::map<int, MultiPoly> acc;
  sqf_rec(p, acc);
  for (auto& [m, f] : acc) out.factors.emplace_back(f.monic(), m);
  return out;
}

SquareReduction square_reduce(const MultiPoly& p) {
  const auto& vars = p.vars();
  SquareReduction r{MultiPoly::constant(vars, NfElem(1)), NfElem(1),
                    MultiPoly::constant(vars, NfElem(1))};
  if (p.is_zero()) throw ZeroRadicand();
  MSquarefree d = squarefree_decomposition(p);
  r.unit = d.unit;
  for (const auto& [f, m] : d.factors) {
    if (m % 2 == 1) r.f = r.f * f;
    if (m >= 2) r.h = r.h * f.pow(m / 2);
  }
  return r;
}

SquareReduction square_reduce(const MultiPoly& p, const MultiPoly& q) {
  if (p.is_zero() || q.is_zero()) throw ZeroRadicand();
  if (q.is_constant()) {
    SquareReduction r = square_reduce(p);
    r.unit = r.unit * q.coeff(Exponent(q.nvars(), 0));
    return r;
  }
  // coprime factors have disjoint squarefree decompositions
  if (!mgcd(p, q).is_constant()) return square_reduce(p * q);
  SquareReduction a = square_reduce(p), b = square_reduce(q);
  return {a.f * b.f, a.unit * b.unit, a.h * b.h};
}

MultiPoly squarefree_part(const MultiPoly& p) {
  if (p.is_constant()) return MultiPoly::constant(p.vars(), NfElem(1));
  return square_reduce(p).f;
}

MultiPoly radicand_reduce(const MultiPoly& p, const MultiPoly& q) {
  if (p.is_zero()) throw ZeroRadicand();
  if (q.is_zero()) throw ZeroInversion();
  return square_reduce(p, q).f;
}

std::vector<std::string> effective_vars(const MultiPoly& f) {
  std::vector<std::string> out;
  for (size_t i = 0; i < f.nvars(); ++i)
    if (f.involves(i)) out.push_back(f.vars()[i]);
  return out;
}

MultiPoly restrict_to_effective(const MultiPoly& f) { return f.with_vars(effective_vars(f)); }

std::optional<int> is_homogeneous(const MultiPoly& f) {
  if (f.is_zero()) return std::nullopt;
  const int d = f.total_degree();
  for (const auto& [e, c] : f.terms())
    if (exponent_degree(e) != d) return std::nullopt;
  return d;
}

MultiPoly homogenize(const MultiPoly& f, const std::string& name, int degree) {
  if (degree < 0) degree = f.total_degree();
  std::vector<std::string> vars{name};
  vars.insert(vars.end(), f.vars().begin(), f.vars().end());
  MultiPoly r(vars);
  for (const auto& [e, c] : f.terms()) {
    Exponent g{degree - exponent_degree(e)};
    g.insert(g.end(), e.begin(), e.end());
    r.add_term(g, c);
  }
  return r;
}

MultiPoly dehomogenize(const MultiPoly& f, const std::string& var) {
  auto d = is_homogeneous(f);
  if (!d) throw Error("dehomogenize: polynomial is not homogeneous");
  if (*d % 2 == 1) throw OddDegree();
  int i = var_index(f.vars(), var);
  if (i < 0) throw UndefinedVariable(var);
  std::vector<std::string> rest;
  for (size_t j = 0; j < f.nvars(); ++j)
    if (static_cast<int>(j) != i) rest.push_back(f.vars()[j]);
  return squarefree_part(f.substitute_value(i, NfElem(1)).with_vars(rest));
}

// ---- rational functions and maps ------------------------------------------

RationalFunction::RationalFunction(MultiPoly num)
    : num_(std::move(num)), den_(MultiPoly::constant(num_.vars(), NfElem(1))) {}

RationalFunction::RationalFunction(MultiPoly num, MultiPoly den) {
  if (den.is_zero()) throw ZeroInversion();
  if (num.is_zero()) {
    num_ = MultiPoly(den.vars());
    den_ = MultiPoly::constant(den.vars(), NfElem(1));
    return;
  }
  MultiPoly g = mgcd(num, den);
  if (!g.is_constant()) {
    num = divide(num, g);
    den = divide(den, g);
  }
  NfElem l = den.leading_coeff();
  if (!l.is_one()) {
    NfElem inv = l.inverse();
    num = inv * num;
    den = inv * den;
  }
  num_ = std::move(num);
  den_ = std::move(den);
}

RationalFunction RationalFunction::coprime(MultiPoly num, MultiPoly den) {
  RationalFunction r;
  if (num.is_zero()) {
    r.num_ = MultiPoly(den.vars());
    r.den_ = MultiPoly::constant(den.vars(), NfElem(1));
    return r;
  }
  NfElem l = den.leading_coeff();
  if (!l.is_one()) {
    NfElem inv = l.inverse();
    num = inv * num;
    den = inv * den;
  }
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  return r;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  // both operands are reduced, so only cross cancellations can occur
  MultiPoly g1 = mgcd(a.num_, b.den_), g2 = mgcd(b.num_, a.den_);
  MultiPoly an = a.num_, bn = b.num_, ad = a.den_, bd = b.den_;
  if (!g1.is_constant()) an = divide(an, g1), bd = divide(bd, g1);
  if (!g2.is_constant()) bn = divide(bn, g2), ad = divide(ad, g2);
  return RationalFunction::coprime(an * bn, ad * bd);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw ZeroInversion();
  return a * RationalFunction::coprime(b.den_, b.num_);
}

RationalFunction RationalFunction::pow(int e) const {
  RationalFunction r;
  r.num_ = num_.pow(e);
  r.den_ = den_.pow(e);
  return r;
}

std::string RationalFunction::to_string() const {
  if (den_.is_constant()) return num_.to_string();
  std::string n = num_.size() > 1 ? "(" + num_.to_string() + ")" : num_.to_string();
  if (num_.size() == 1 && !num_.leading_coeff().is_rational()) n = "(" + n + ")";
  return n + "/(" + den_.to_string() + ")";
}

RationalMap::RationalMap(std::vector<std::string> source, std::vector<std::string> target,
                         std::vector<RationalFunction> assignments)
    : source_(std::move(source)), target_(std::move(target)), assign_(std::move(assignments)) {
  if (assign_.size() != source_.size()) throw InternalError("RationalMap: arity mismatch");
  for (auto& a : assign_)
    a = RationalFunction(a.num().with_vars(target_), a.den().with_vars(target_));
}

RationalMap RationalMap::identity(const std::vector<std::string>& vars) {
  std::vector<RationalFunction> a;
  for (size_t i = 0; i < vars.size(); ++i) a.emplace_back(MultiPoly::variable(vars, i));
  return RationalMap(vars, vars, std::move(a));
}

const RationalFunction* RationalMap::assignment(const std::string& var) const {
  int i = var_index(source_, var);
  return i < 0 ? nullptr : &assign_[i];
}

bool RationalMap::is_nonconstant() const {
  for (const auto& a : assign_)
    if (!a.is_constant()) return true;
  return false;
}

FieldPtr RationalMap::field() const {
  FieldPtr f;
  for (const auto& a : assign_) f = common_field(common_field(f, a.num().field()), a.den().field());
  return f;
}

RationalFunction substitute(const MultiPoly& f, const RationalMap& m) {
  const auto& tv = m.target();
  std::vector<int> idx(f.nvars(), -1);
  for (size_t i = 0; i < f.nvars(); ++i) {
    if (!f.involves(i)) continue;
    idx[i] = var_index(m.source(), f.vars()[i]);
    if (idx[i] < 0) throw UndefinedVariable(f.vars()[i]);
  }
  if (f.is_constant()) return RationalFunction(MultiPoly::constant(tv, f.is_zero() ? NfElem(0) : f.constant_value()));
  // common denominator D of the assignments in use; numerators N_i over D
  MultiPoly D = MultiPoly::constant(tv, NfElem(1));
  for (size_t i = 0; i < f.nvars(); ++i) {
    if (idx[i] < 0) continue;
    const MultiPoly& d = m.assignments()[idx[i]].den();
    if (d.is_constant() || d == D) continue;
    D = D * divide(d, mgcd(D, d));
  }
  std::vector<MultiPoly> N(f.nvars());
  for (size_t i = 0; i < f.nvars(); ++i)
    if (idx[i] >= 0) {
      const auto& a = m.assignments()[idx[i]];
      N[i] = a.den() == D ? a.num() : a.num() * divide(D, a.den());
    }
  const int deg = f.total_degree();
  std::vector<std::vector<MultiPoly>> npow(f.nvars());
  std::vector<MultiPoly> dpow{MultiPoly::constant(tv, NfElem(1))};
  while (static_cast<int>(dpow.size()) <= deg) dpow.push_back(dpow.back() * D);
  auto power = [&](size_t i, int e) -> const MultiPoly& {
    auto& pw = npow[i];
    if (pw.empty()) pw.push_back(MultiPoly::constant(tv, NfElem(1)));
    while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * N[i]);
    return pw[e];
  };
  MultiPoly num(tv);
  for (const auto& [e, c] : f.terms()) {
    MultiPoly t = MultiPoly::constant(tv, c);
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) t = t * power(i, e[i]);
    num += t * dpow[deg - exponent_degree(e)];
  }
  if (num.is_zero() || D.is_constant()) return RationalFunction(num, dpow[deg]);
  // cancel against the squarefree factors of D, then against their parts
  MSquarefree sq = squarefree_decomposition(D);
  NfElem unit(1);
  for (int k = 0; k < deg; ++k) unit = unit * sq.unit;
  MultiPoly den = MultiPoly::constant(tv, unit);
  for (const auto& [g, mult] : sq.factors) {
    int left = mult * deg;
    while (left > 0) {
      auto q = divide_exact(num, g);
      if (!q) break;
      num = std::move(*q);
      --left;
    }
    MultiPoly rest = g.pow(left);
    if (left > 0) {
      MultiPoly t = mgcd(num, g);
      while (!t.is_constant()) {
        auto q = divide_exact(num, t);
        if (!q) break;
        num = std::move(*q);
        rest = divide(rest, t);
        t = mgcd(num, rest);
      }
    }
    den = den * rest;
  }
  return RationalFunction::coprime(num, den);
}

RationalFunction substitute(const RationalFunction& f, const RationalMap& m) {
  return substitute(f.num(), m) / substitute(f.den(), m);
}

RationalMap compose(const RationalMap& outer, const RationalMap& inner) {
  std::vector<RationalFunction> a;
  for (const auto& o : outer.assignments()) a.push_back(substitute(o, inner));
  return RationalMap(outer.source(), inner.target(), std::move(a));
}

std::optional<RationalFunction> is_perfect_square(const RationalFunction& g) {
  if (g.is_zero()) return g;
  MSquarefree n = squarefree_decomposition(g.num());
  MSquarefree d = squarefree_decomposition(g.den());
  const auto& vars = g.vars();
  MultiPoly hn = MultiPoly::constant(vars, NfElem(1)), hd = hn;
  for (const auto& [f, m] : n.factors) {
    if (m % 2 == 1) return std::nullopt;
    hn = hn * f.pow(m / 2);
  }
  for (const auto& [f, m] : d.factors) {
    if (m % 2 == 1) return std::nullopt;
    hd = hd * f.pow(m / 2);
  }
  auto s = nf_sqrt(n.unit / d.unit, common_field(g.num().field(), g.den().field()));
  if (!s) return std::nullopt;
  NfElem c = *s;
  if (c.is_rational() && sgn(c.rational()) < 0) c = -c;
  return RationalFunction(c * hn, hd);
}

}  // namespace ratroot
