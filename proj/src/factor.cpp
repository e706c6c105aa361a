#include "ratroot/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

#include "ratroot/deadline.hpp"
#include "ratroot/elimination.hpp"

namespace ratroot {

namespace {

// ---- polynomials over Z/p, p a small odd prime --------------------------

using MP = std::vector<int64_t>;

void trim(MP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int64_t md(int64_t a, int64_t p) {
  a %= p;
  return a < 0 ? a + p : a;
}

int64_t pow_mod(int64_t b, int64_t e, int64_t p) {
  int64_t r = 1;
  b = md(b, p);
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

int64_t inv_mod(int64_t a, int64_t p) { return pow_mod(a, p - 2, p); }

MP mp_sub(MP a, const MP& b, int64_t p) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = md(a[i] - b[i], p);
  trim(a);
  return a;
}

MP mp_add(MP a, const MP& b, int64_t p) {
  if (b.size() > a.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + b[i]) % p;
  trim(a);
  return a;
}

MP mp_mul(const MP& a, const MP& b, int64_t p) {
  if (a.empty() || b.empty()) return {};
  MP r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

std::pair<MP, MP> mp_divmod(MP a, const MP& b, int64_t p) {
  if (a.size() < b.size()) return {{}, a};
  const size_t db = b.size() - 1;
  MP q(a.size() - db, 0);
  int64_t inv = inv_mod(b.back(), p);
  for (size_t i = a.size(); i-- > db;) {
    if (a[i] == 0) continue;
    int64_t t = a[i] * inv % p;
    q[i - db] = t;
    for (size_t j = 0; j <= db; ++j) a[i - db + j] = md(a[i - db + j] - t * b[j], p);
  }
  a.resize(db);
  trim(a);
  trim(q);
  return {q, a};
}

MP mp_monic(MP a, int64_t p) {
  if (a.empty()) return a;
  int64_t inv = inv_mod(a.back(), p);
  for (auto& c : a) c = c * inv % p;
  return a;
}

MP mp_gcd(MP a, MP b, int64_t p) {
  while (!b.empty()) {
    MP r = mp_divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return mp_monic(a, p);
}

// s*a + t*b = 1 for coprime a, b.
std::pair<MP, MP> mp_ext_gcd(const MP& a, const MP& b, int64_t p) {
  MP r0 = a, r1 = b, s0 = {1}, s1, t0, t1 = {1};
  while (!r1.empty()) {
    auto [q, r] = mp_divmod(r0, r1, p);
    r0 = std::move(r1);
    r1 = std::move(r);
    MP s2 = mp_sub(s0, mp_mul(q, s1, p), p);
    s0 = std::move(s1);
    s1 = std::move(s2);
    MP t2 = mp_sub(t0, mp_mul(q, t1, p), p);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  int64_t inv = inv_mod(r0.back(), p);
  for (auto& c : s0) c = c * inv % p;
  for (auto& c : t0) c = c * inv % p;
  return {s0, t0};
}

MP mp_deriv(const MP& a, int64_t p) {
  if (a.size() <= 1) return {};
  MP r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * static_cast<int64_t>(i) % p;
  trim(r);
  return r;
}

MP mp_powmod(MP base, Integer e, const MP& m, int64_t p) {
  MP r = {1};
  base = mp_divmod(base, m, p).second;
  while (sgn(e) > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mp_divmod(mp_mul(r, base, p), m, p).second;
    e >>= 1;
    if (sgn(e) > 0) base = mp_divmod(mp_mul(base, base, p), m, p).second;
  }
  return r;
}

// Distinct-degree factorization of a monic squarefree polynomial.
std::vector<std::pair<MP, int>> ddf(MP f, int64_t p) {
  std::vector<std::pair<MP, int>> out;
  const MP x = {0, 1};
  MP h = x;
  for (int i = 1; 2 * i <= static_cast<int>(f.size()) - 1; ++i) {
    h = mp_powmod(h, Integer(static_cast<long>(p)), f, p);
    MP g = mp_gcd(f, mp_sub(h, x, p), p);
    if (g.size() > 1) {
      out.emplace_back(g, i);
      f = mp_divmod(f, g, p).first;
      h = mp_divmod(h, f, p).second;
    }
  }
  if (f.size() > 1) out.emplace_back(f, static_cast<int>(f.size()) - 1);
  return out;
}

// Equal-degree splitting (Cantor-Zassenhaus, odd p).
void edf(const MP& g, int d, int64_t p, std::mt19937_64& rng, std::vector<MP>& out) {
  const int n = static_cast<int>(g.size()) - 1;
  if (n == d) {
    out.push_back(g);
    return;
  }
  Integer e;
  mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  std::uniform_int_distribution<int64_t> dist(0, p - 1);
  while (true) {
    MP a(static_cast<size_t>(n));
    for (auto& c : a) c = dist(rng);
    trim(a);
    if (a.size() <= 1) continue;
    MP b = mp_sub(mp_powmod(a, e, g, p), {1}, p);
    MP h = mp_gcd(g, b, p);
    if (h.size() > 1 && h.size() < g.size()) {
      edf(h, d, p, rng, out);
      edf(mp_divmod(g, h, p).first, d, p, rng, out);
      return;
    }
  }
}

// ---- integer polynomials -------------------------------------------------

using ZP = std::vector<Integer>;

void trim(ZP& a) {
  while (!a.empty() && sgn(a.back()) == 0) a.pop_back();
}

ZP zp_mul(const ZP& a, const ZP& b) {
  if (a.empty() || b.empty()) return {};
  ZP r(a.size() + b.size() - 1, Integer(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

void zp_reduce(ZP& a, const Integer& m) {
  for (auto& c : a) {
    c %= m;
    if (sgn(c) < 0) c += m;
  }
  trim(a);
}

MP zp_to_mp(const ZP& a, int64_t p) {
  MP r(a.size());
  Integer pp(static_cast<long>(p));
  for (size_t i = 0; i < a.size(); ++i) {
    Integer c = a[i] % pp;
    if (sgn(c) < 0) c += pp;
    r[i] = c.get_si();
  }
  trim(r);
  return r;
}

ZP mp_to_zp(const MP& a) {
  ZP r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = Integer(static_cast<long>(a[i]));
  return r;
}

Integer zp_content(const ZP& a) {
  Integer g(0);
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

ZP primitive(ZP a) {
  Integer g = zp_content(a);
  if (sgn(a.back()) < 0) g = -g;
  for (auto& c : a) c /= g;
  return a;
}

std::optional<ZP> zp_div_exact(ZP a, const ZP& b) {
  if (a.size() < b.size()) return std::nullopt;
  const size_t db = b.size() - 1;
  ZP q(a.size() - db, Integer(0));
  for (size_t i = a.size(); i-- > db;) {
    if (sgn(a[i]) == 0) continue;
    if (!mpz_divisible_p(a[i].get_mpz_t(), b.back().get_mpz_t())) return std::nullopt;
    Integer t = a[i] / b.back();
    q[i - db] = t;
    for (size_t j = 0; j <= db; ++j) a[i - db + j] -= t * b[j];
  }
  for (size_t i = 0; i < db; ++i)
    if (sgn(a[i]) != 0) return std::nullopt;
  trim(q);
  return q;
}

ZP to_primitive_z(const QPoly& p) {
  Integer l(1);
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  ZP z(p.coeffs().size());
  for (size_t i = 0; i < z.size(); ++i) {
    Rational v = p.coeffs()[i] * l;
    z[i] = v.get_num();
  }
  return primitive(std::move(z));
}

QPoly zp_to_monic_q(const ZP& a) {
  std::vector<Rational> c(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    c[i] = Rational(a[i], a.back());
    c[i].canonicalize();
  }
  return QPoly(std::move(c));
}

// Lift Fm ≡ g0*h0 (mod p), all monic, to a factorization modulo p^k.
std::pair<ZP, ZP> hensel_lift(const ZP& fm, const MP& g0, const MP& h0, int64_t p, int k) {
  auto [s, t] = mp_ext_gcd(g0, h0, p);
  ZP g = mp_to_zp(g0), h = mp_to_zp(h0);
  Integer pj(static_cast<long>(p));
  const Integer pp(static_cast<long>(p));
  for (int j = 1; j < k; ++j) {
    Integer next = pj * pp;
    ZP e = fm;
    ZP gh = zp_mul(g, h);
    if (gh.size() > e.size()) e.resize(gh.size(), Integer(0));
    for (size_t i = 0; i < gh.size(); ++i) e[i] -= gh[i];
    zp_reduce(e, next);
    for (auto& c : e) c /= pj;
    MP em = zp_to_mp(e, p);
    if (em.empty()) {
      pj = next;
      continue;
    }
    auto [q, dg] = mp_divmod(mp_mul(t, em, p), g0, p);
    MP dh = mp_add(mp_mul(s, em, p), mp_mul(q, h0, p), p);
    ZP dgz = mp_to_zp(dg), dhz = mp_to_zp(dh);
    for (size_t i = 0; i < dgz.size(); ++i) g[i] += pj * dgz[i];
    for (size_t i = 0; i < dhz.size(); ++i) h[i] += pj * dhz[i];
    pj = next;
  }
  zp_reduce(g, pj);
  zp_reduce(h, pj);
  return {g, h};
}

const int64_t kPrimes[] = {3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
                           47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103,
                           107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173,
                           179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241,
                           251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311, 313, 317};

// Irreducible factors of a primitive squarefree integer polynomial, lc > 0.
std::vector<ZP> zassenhaus(const ZP& f) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) return {f};

  int64_t best_p = 0;
  size_t best_count = 0;
  int good = 0;
  for (int64_t p : kPrimes) {
    if (sgn(f.back() % Integer(static_cast<long>(p))) == 0) continue;
    MP fp = mp_monic(zp_to_mp(f, p), p);
    if (static_cast<int>(fp.size()) - 1 != n) continue;
    if (mp_gcd(fp, mp_deriv(fp, p), p).size() != 1) continue;
    size_t count = 0;
    for (const auto& [g, d] : ddf(fp, p)) count += (g.size() - 1) / static_cast<size_t>(d);
    if (best_p == 0 || count < best_count) {
      best_p = p;
      best_count = count;
    }
    if (count == 1 || ++good >= 5) break;
  }
  if (best_p == 0) throw InternalError("no suitable prime for factorization");
  if (best_count == 1) return {f};

  const int64_t p = best_p;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  MP fp = mp_monic(zp_to_mp(f, p), p);
  std::vector<MP> modfac;
  for (const auto& [g, d] : ddf(fp, p)) edf(g, d, p, rng, modfac);

  // Coefficient bound for lc(f)/lc(g) * g over all factors g of f.
  Integer norm2(0);
  for (const auto& c : f) norm2 += c * c;
  Integer bound = (isqrt(norm2) + 1) * abs(f.back());
  bound <<= n;
  bound *= 2;
  Integer mod(static_cast<long>(p));
  int k = 1;
  while (mod <= bound) {
    mod *= p;
    ++k;
  }

  ZP fm = f;
  {
    Integer lcinv;
    mpz_invert(lcinv.get_mpz_t(), f.back().get_mpz_t(), mod.get_mpz_t());
    for (auto& c : fm) c *= lcinv;
    zp_reduce(fm, mod);
  }
  std::vector<ZP> lifted;
  ZP cur = fm;
  for (size_t i = 0; i + 1 < modfac.size(); ++i) {
    MP rest = {1};
    for (size_t j = i + 1; j < modfac.size(); ++j) rest = mp_mul(rest, modfac[j], p);
    auto [g, h] = hensel_lift(cur, modfac[i], rest, p, k);
    lifted.push_back(std::move(g));
    cur = std::move(h);
  }
  lifted.push_back(std::move(cur));

  const Integer half = mod / 2;
  std::vector<ZP> result;
  ZP fcur = f;
  std::vector<ZP> rem = lifted;
  size_t s = 1;
  while (2 * s <= rem.size()) {
    bool found = false;
    std::vector<size_t> idx(s);
    for (size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      check_deadline();
      ZP g = {fcur.back()};
      for (size_t i : idx) {
        g = zp_mul(g, rem[i]);
        zp_reduce(g, mod);
      }
      for (auto& c : g)
        if (c > half) c -= mod;
      trim(g);
      g = primitive(g);
      if (auto q = zp_div_exact(fcur, g)) {
        result.push_back(g);
        fcur = *q;
        std::vector<ZP> keep;
        for (size_t i = 0, j = 0; i < rem.size(); ++i) {
          if (j < idx.size() && idx[j] == i) {
            ++j;
            continue;
          }
          keep.push_back(rem[i]);
        }
        rem = std::move(keep);
        found = true;
        break;
      }
      // next combination
      int i = static_cast<int>(s) - 1;
      while (i >= 0 && idx[i] == rem.size() - s + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (fcur.size() > 1) result.push_back(primitive(fcur));
  return result;
}

bool nf_poly_less(const UniPoly<NfElem>& a, const UniPoly<NfElem>& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.to_string() < b.to_string();
}

// Irreducible factors over K (height one) of a monic squarefree h.
std::vector<UniPoly<NfElem>> trager_core(const UniPoly<NfElem>& h, const FieldPtr& K) {
  if (h.degree() <= 1) return {h};
  const NfElem alpha = NfElem::generator(K);
  const int dk = K->degree();
  QBiPoly m;
  for (const auto& c : K->minpoly().coeffs()) m.push_back(QPoly::constant(c.rational()));
  for (long k = 0;; ++k) {
    const long s = (k % 2 == 1) ? (k + 1) / 2 : -(k / 2);
    check_deadline();
    const NfElem shift = NfElem(s) * alpha;
    UniPoly<NfElem> shifted = h.compose(UniPoly<NfElem>{-shift, NfElem(1)});
    // shifted as a polynomial in (t, y) with t standing for alpha
    std::vector<std::vector<Rational>> cols(static_cast<size_t>(dk),
                                            std::vector<Rational>(shifted.coeffs().size()));
    for (size_t j = 0; j < shifted.coeffs().size(); ++j) {
      const NfElem& c = shifted.coeffs()[j];
      if (c.is_rational()) {
        cols[0][j] = c.rational();
      } else {
        for (size_t i = 0; i < c.coeffs().size(); ++i) cols[i][j] = c.coeffs()[i].rational();
      }
    }
    QBiPoly H;
    for (auto& c : cols) H.emplace_back(std::move(c));
    QPoly norm = resultant_main(m, H);
    if (gcd(norm, norm.derivative()).degree() > 0) continue;
    std::vector<UniPoly<NfElem>> out;
    const UniPoly<NfElem> back{shift, NfElem(1)};
    for (const auto& [ni, mult] : factor(norm).factors) {
      UniPoly<NfElem> g = gcd(shifted, to_nf(ni));
      if (g.degree() > 0) out.push_back(g.compose(back).monic());
    }
    return out;
  }
}

std::vector<UniPoly<NfElem>> trager(const UniPoly<NfElem>& h, const FieldPtr& K) {
  if (auto hq = to_q(h)) {
    std::vector<UniPoly<NfElem>> out;
    for (const auto& [g, m] : factor(*hq).factors)
      for (auto& gk : trager_core(to_nf(g), K)) out.push_back(std::move(gk));
    return out;
  }
  return trager_core(h, K);
}

}  // namespace

bool poly_less(const QPoly& a, const QPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i)
    if (a.coeffs()[i] != b.coeffs()[i]) return a.coeffs()[i] < b.coeffs()[i];
  return false;
}

UniPoly<NfElem> to_nf(const QPoly& p) {
  std::vector<NfElem> c(p.coeffs().begin(), p.coeffs().end());
  return UniPoly<NfElem>(std::move(c));
}

std::optional<QPoly> to_q(const UniPoly<NfElem>& p) {
  std::vector<Rational> c;
  for (const auto& e : p.coeffs()) {
    if (!e.is_rational()) return std::nullopt;
    c.push_back(e.rational());
  }
  return QPoly(std::move(c));
}

Factorization<Rational> factor(const QPoly& p) {
  Factorization<Rational> out;
  if (p.is_zero()) return out;
  out.unit = p.lead();
  for (const auto& [s, m] : squarefree_decomposition(p).factors) {
    if (s.degree() == 1) {
      out.factors.emplace_back(s, m);
      continue;
    }
    for (const auto& z : zassenhaus(to_primitive_z(s))) out.factors.emplace_back(zp_to_monic_q(z), m);
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
    if (poly_less(a.first, b.first)) return true;
    if (poly_less(b.first, a.first)) return false;
    return a.second < b.second;
  });
  return out;
}

Factorization<NfElem> factor_over(const UniPoly<NfElem>& p, const FieldPtr& field) {
  Factorization<NfElem> out;
  if (p.is_zero()) return out;
  FieldPtr K = field;
  for (const auto& c : p.coeffs()) K = common_field(K, c.field());
  out.unit = p.lead();
  if (!K) {
    auto fq = factor(*to_q(p));
    for (const auto& [g, m] : fq.factors) out.factors.emplace_back(to_nf(g), m);
    return out;
  }
  if (K->height() > 1) throw Unsupported("factorization over a field of height two");
  for (const auto& [s, m] : squarefree_decomposition(p).factors)
    for (auto& g : trager(s, K)) out.factors.emplace_back(std::move(g), m);
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
    if (nf_poly_less(a.first, b.first)) return true;
    if (nf_poly_less(b.first, a.first)) return false;
    return a.second < b.second;
  });
  return out;
}

std::vector<NfElem> roots_in_field(const UniPoly<NfElem>& p, const FieldPtr& field) {
  std::vector<NfElem> out;
  for (const auto& [g, m] : factor_over(p, field).factors)
    if (g.degree() == 1) out.push_back(-g.coeffs()[0]);
  return out;
}

int odd_multiplicity_root_count(const QPoly& p) { return odd_part(p).degree(); }

std::optional<NfElem> nf_sqrt(const NfElem& e, const FieldPtr& field) {
  if (e.is_rational()) {
    if (auto r = rational_sqrt(e.rational())) return NfElem(*r);
    if (!field) return std::nullopt;
  }
  UniPoly<NfElem> y2{-e, NfElem(0), NfElem(1)};
  auto roots = roots_in_field(y2, common_field(field, e.field()));
  if (roots.empty()) return std::nullopt;
  return roots.front();
}

}  // namespace ratroot
