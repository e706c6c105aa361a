#include <doctest.h>

#include <random>

#include "ratroot/elimination.hpp"
#include "ratroot/factor.hpp"
#include "ratroot/number_field.hpp"

using namespace ratroot;

namespace {

QPoly qp(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return QPoly(std::move(v));
}

QPoly random_poly(std::mt19937& rng, int deg, int height) {
  std::uniform_int_distribution<int> d(-height, height);
  std::vector<Rational> v(static_cast<size_t>(deg) + 1);
  for (auto& c : v) c = d(rng);
  if (v.back() == 0) v.back() = 1;
  return QPoly(std::move(v));
}

// Rational root test by brute force over divisors: independent of the
// modular machinery.
bool has_rational_root(const QPoly& p) {
  Integer l(1);
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> z;
  for (const auto& c : p.coeffs()) z.push_back(Rational(c * l).get_num());
  if (z[0] == 0) return true;
  auto divisors = [](Integer n) {
    n = abs(n);
    std::vector<Integer> out;
    for (Integer d = 1; d * d <= n; ++d)
      if (n % d == 0) {
        out.push_back(d);
        out.push_back(n / d);
      }
    return out;
  };
  for (const auto& a : divisors(z[0]))
    for (const auto& b : divisors(z.back()))
      for (int s : {1, -1}) {
        Rational r(s * a, b);
        r.canonicalize();
        if (p.eval(r) == 0) return true;
      }
  return false;
}

FieldPtr sqrt2() {
  return NumberField::make(nullptr, UniPoly<NfElem>{NfElem(-2), NfElem(0), NfElem(1)}, "a");
}

}  // namespace

TEST_CASE("gcd of univariate polynomials") {
  QPoly a = qp({1, 0, 1}) * qp({-3, 1});
  QPoly b = qp({1, 0, 1}) * qp({5, 1});
  CHECK(gcd(a, b) == qp({1, 0, 1}));
  CHECK(gcd(qp({-1, 1}), qp({1, 1})) == qp({1}));
}

TEST_CASE("resultant") {
  // Res(x^2 - 2, x - 1) = (1)^2 - 2 = -1 up to sign convention lc(b)^deg(a) * a(root of b)
  CHECK(resultant(qp({-2, 0, 1}), qp({-1, 1})) == Rational(-1));
  CHECK(resultant(qp({-1, 1}) * qp({2, 1}), qp({-1, 1})) == Rational(0));
}

TEST_CASE("factorization over Q") {
  SUBCASE("x^4 + 1 is irreducible") {
    auto f = factor(qp({1, 0, 0, 0, 1}));
    REQUIRE(f.factors.size() == 1);
    CHECK(f.factors[0].first.degree() == 4);
  }
  SUBCASE("(1 + 4x) x (x - 4)") {
    auto f = factor(qp({1, 4}) * qp({0, 1}) * qp({-4, 1}));
    CHECK(f.factors.size() == 3);
    CHECK(f.unit == Rational(4));
    for (const auto& [g, m] : f.factors) CHECK(g.degree() == 1);
  }
  SUBCASE("multiplicities") {
    auto f = factor(qp({-1, 1}).pow(3) * qp({1, 0, 1}).pow(2));
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == std::make_pair(qp({-1, 1}), 3));
    CHECK(f.factors[1] == std::make_pair(qp({1, 0, 1}), 2));
  }
  SUBCASE("Swinnerton-Dyer style polynomial") {
    // minimal polynomial of sqrt2 + sqrt3: splits into quadratics mod every prime
    auto f = factor(qp({1, 0, -10, 0, 1}));
    CHECK(f.factors.size() == 1);
  }
}

TEST_CASE("random factorizations re-multiply to the input") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> nf(1, 4), deg(1, 3);
    QPoly prod = QPoly::constant(Rational(1));
    int n = nf(rng);
    for (int i = 0; i < n; ++i) prod = prod * random_poly(rng, deg(rng), 9);
    auto f = factor(prod);
    QPoly back = QPoly::constant(f.unit);
    for (const auto& [g, m] : f.factors) {
      CHECK(g.lead() == Rational(1));
      if (g.degree() >= 2 && g.degree() <= 3) CHECK_FALSE(has_rational_root(g));
      back = back * g.pow(m);
    }
    CHECK(back == prod);
  }
}

TEST_CASE("odd multiplicity root count") {
  CHECK(odd_multiplicity_root_count(qp({-1, 1}).pow(3) * qp({-2, 1}).pow(2)) == 1);
  CHECK(odd_multiplicity_root_count(qp({0, 1}) * qp({1, 4}) * qp({-4, 1})) == 3);
  CHECK(odd_multiplicity_root_count(qp({1, 0, 1}).pow(2)) == 0);
}

TEST_CASE("number field arithmetic") {
  FieldPtr K = sqrt2();
  NfElem a = NfElem::generator(K);
  CHECK(a * a == NfElem(2));
  CHECK((a * a).is_rational());
  CHECK(a.inverse() == NfElem(Rational(1, 2)) * a);
  CHECK((NfElem(1) + a).inverse() == a - NfElem(1));
  CHECK_THROWS_AS(NfElem(0).inverse(), ZeroInversion);

  FieldPtr L = NumberField::make(nullptr, UniPoly<NfElem>{NfElem(-3), NfElem(0), NfElem(1)}, "b");
  CHECK_THROWS_AS(a + NfElem::generator(L), IncompatibleFields);
}

TEST_CASE("tower of height two") {
  FieldPtr K = sqrt2();
  NfElem a = NfElem::generator(K);
  FieldPtr K2 = NumberField::make(K, UniPoly<NfElem>{-a, NfElem(0), NfElem(1)}, "b");
  NfElem b = NfElem::generator(K2);
  CHECK(b * b == a);
  CHECK((b * b).field() == K);
  CHECK(b * b * b * b == NfElem(2));
  CHECK_THROWS_AS(NumberField::make(K2, UniPoly<NfElem>{-b, NfElem(0), NfElem(1)}, "c"),
                  TowerTooDeep);
}

TEST_CASE("random inversions in towers") {
  std::mt19937 rng(777);
  std::uniform_int_distribution<int> d(-20, 20);
  FieldPtr K = NumberField::make(nullptr, UniPoly<NfElem>{NfElem(-1), NfElem(-1), NfElem(0), NfElem(1)}, "a");
  NfElem a = NfElem::generator(K);
  FieldPtr K2 = NumberField::make(K, UniPoly<NfElem>{-a, NfElem(0), NfElem(1)}, "b");
  NfElem b = NfElem::generator(K2);
  int done = 0;
  for (int i = 0; i < 200; ++i) {
    NfElem x = NfElem(d(rng)) + NfElem(d(rng)) * a + NfElem(d(rng)) * a * a;
    if (i % 2 == 1) x = x + (NfElem(d(rng)) + NfElem(d(rng)) * a) * b;
    if (x.is_zero()) continue;
    CHECK(x * x.inverse() == NfElem(1));
    ++done;
  }
  CHECK(done >= 100);
}

TEST_CASE("factorization over a quadratic field") {
  FieldPtr K = sqrt2();
  NfElem a = NfElem::generator(K);
  // x^2 - 2 splits over Q(sqrt 2)
  auto f = factor_over(to_nf(qp({-2, 0, 1})), K);
  CHECK(f.factors.size() == 2);
  // x^4 + 1 = (x^2 - a x + 1)(x^2 + a x + 1)
  auto g = factor_over(to_nf(qp({1, 0, 0, 0, 1})), K);
  REQUIRE(g.factors.size() == 2);
  UniPoly<NfElem> prod = UniPoly<NfElem>::constant(NfElem(1));
  for (const auto& [h, m] : g.factors) {
    CHECK(h.degree() == 2);
    prod = prod * h;
  }
  CHECK(prod == to_nf(qp({1, 0, 0, 0, 1})));
  // x^2 - 3 stays irreducible
  CHECK(factor_over(to_nf(qp({-3, 0, 1})), K).factors.size() == 1);
  // a genuinely non-rational polynomial: (x - a)(x + 1 + a)
  UniPoly<NfElem> p = UniPoly<NfElem>{-a, NfElem(1)} * UniPoly<NfElem>{NfElem(1) + a, NfElem(1)};
  auto r = roots_in_field(p);
  CHECK(r.size() == 2);
}

TEST_CASE("square roots in fields") {
  CHECK(nf_sqrt(NfElem(Rational(9, 4))) == NfElem(Rational(3, 2)));
  CHECK_FALSE(nf_sqrt(NfElem(2)).has_value());
  FieldPtr K = sqrt2();
  NfElem a = NfElem::generator(K);
  NfElem e = (NfElem(1) + a) * (NfElem(1) + a);  // 3 + 2a
  auto s = nf_sqrt(e);
  REQUIRE(s.has_value());
  CHECK(*s * *s == e);
  CHECK_FALSE(nf_sqrt(a).has_value());
}

TEST_CASE("bivariate resultant against the univariate one") {
  // a = y^2 - x, b = y - x: Res_y = x^2 - x
  QBiPoly a = {qp({0, -1}), qp({}), qp({1})};
  QBiPoly b = {qp({0, -1}), qp({1})};
  CHECK(resultant_main(a, b) == qp({0, -1, 1}));
  std::mt19937 rng(99);
  for (int t = 0; t < 20; ++t) {
    QBiPoly A = {random_poly(rng, 2, 5), random_poly(rng, 1, 5), random_poly(rng, 1, 5)};
    QBiPoly B = {random_poly(rng, 2, 5), random_poly(rng, 2, 5)};
    QPoly r = resultant_main(A, B);
    for (long x : {3L, -7L, 11L}) {
      Rational xv(x);
      QPoly sa({A[0].eval(xv), A[1].eval(xv), A[2].eval(xv)});
      QPoly sb({B[0].eval(xv), B[1].eval(xv)});
      if (sa.degree() == 2 && sb.degree() == 1) CHECK(r.eval(xv) == resultant(sa, sb));
    }
  }
}
