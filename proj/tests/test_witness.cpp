#include <doctest.h>

#include <random>

#include "ratroot/geometry.hpp"
#include "ratroot/parser.hpp"
#include "ratroot/witness.hpp"

using namespace ratroot;

namespace {

const std::vector<std::string> X{"X"};

MultiPoly P(const std::string& s, const std::vector<std::string>& vars) { return parse_poly(s, vars); }

RationalFunction R(const std::string& num, const std::string& den, const std::vector<std::string>& vars) {
  return RationalFunction(P(num, vars), P(den, vars));
}

WitnessReport quadric_witness(const MultiPoly& f, int max_height = 50) {
  GeometricModel m = build_model(f);
  AlgebraicPoint q = point_on_quadric(m, max_height);
  return parametrize_from_point(m.V, q, f.vars(), f);
}

}  // namespace

TEST_CASE("quadric points") {
  AlgebraicPoint a = point_on_quadric(build_model(P("X-1", X)));
  REQUIRE(a.is_rational());
  CHECK(a.coords == std::vector<NfElem>{NfElem(1), NfElem(1), NfElem(0)});

  AlgebraicPoint b = point_on_quadric(build_model(P("X^2+1", X)));
  CHECK(b.coords == std::vector<NfElem>{NfElem(1), NfElem(0), NfElem(1)});

  AlgebraicPoint c = point_on_quadric(build_model(P("X-7", X)), 3);
  REQUIRE_FALSE(c.is_rational());
  NfElem w = c.coords.back();
  CHECK(w * w == NfElem(c.coords[1].rational() - 7));
}

TEST_CASE("quadric parametrizations") {
  for (const char* s : {"X-1", "1-X^2", "X^2+1", "X-7", "3*X^2-2*X+5", "-X^2-1"}) {
    MultiPoly f = P(s, X);
    WitnessReport r = quadric_witness(f, 3);
    CHECK(r.map.is_nonconstant());
    CHECK(substitute(f, r.map) == r.root * r.root);
    INFO(std::string(s));
    CHECK(verify_witness(r.map, f).has_value());
  }
  // the map for X - 1 rationalizes like X -> X^2 + 1
  WitnessReport r = quadric_witness(P("X-1", X));
  CHECK(r.map.assignments()[0].degree() == 2);

  std::vector<std::string> xy{"X", "Y"};
  for (const char* s : {"1-X^2-Y^2", "X*Y+1", "X+Y", "X^2-Y"}) {
    MultiPoly f = P(s, xy);
    WitnessReport q = quadric_witness(f);
    CHECK(substitute(f, q.map) == q.root * q.root);
    for (const auto& a : q.map.assignments()) {
      CHECK(a.num().degree_in(0) <= 2);
      CHECK(a.num().degree_in(1) <= 2);
    }
  }
}

TEST_CASE("projection from a double point of a nodal cubic") {
  std::vector<std::string> xy{"X", "Y"};
  MultiPoly f = P("Y^2-X^2*(X+1)", xy);
  GeometricModel m = build_model(f);
  HighMultResult h = high_mult_point_search(m);
  REQUIRE(h.point);
  WitnessReport r = parametrize_from_point(m.V, *h.point, xy, f);
  CHECK(r.map.is_nonconstant());
  CHECK(verify_witness(r.map, f).has_value());

  // three variables: cubic cone with a rational double point
  std::vector<std::string> xyz{"X", "Y", "Z"};
  MultiPoly g = P("X^2*Z+Y^3+X*Y*Z+1", xyz);
  GeometricModel mg = build_model(g);
  HighMultResult hg = high_mult_point_search(mg);
  if (hg.point) {
    WitnessReport rg = parametrize_from_point(mg.V, *hg.point, xyz, g);
    CHECK(verify_witness(rg.map, g).has_value());
  }
}

TEST_CASE("wrong multiplicity and degenerate projections") {
  MultiPoly f = P("X^3+2", X);
  GeometricModel m = build_model(f);
  // a smooth point of V is not a projection center for a cubic
  AlgebraicPoint smooth = make_point({NfElem(1), NfElem(-1), NfElem(1)});
  CHECK_THROWS_AS(parametrize_from_point(m.V, smooth, X, f), WrongMultiplicity);
}

TEST_CASE("verification") {
  RationalMap circle(X, X, {R("2*X", "X^2+1", X)});
  auto h = verify_witness(circle, P("1-X^2", X));
  REQUIRE(h);
  CHECK(*h == R("X^2-1", "X^2+1", X));

  RationalMap quartic(X, X, {RationalFunction(P("X^4+1", X))});
  CHECK_FALSE(verify_witness(quartic, P("X-2", X)));

  auto id = verify_witness(RationalMap::identity(X), P("(X+1)^2", X));
  REQUIRE(id);
  CHECK(*id == RationalFunction(P("X+1", X)));

  RationalMap constant(X, X, {RationalFunction(P("3", X))});
  CHECK_FALSE(verify_witness(constant, P("X-2", X)));

  // a constant factor is a square over C
  auto c = verify_witness(RationalMap::identity(X), P("-X^2", X));
  REQUIRE(c);
  CHECK(*c * *c == RationalFunction(P("-X^2", X)));
}

TEST_CASE("composition") {
  RationalMap psi(X, X, {RationalFunction(P("X^2+1", X))});
  RationalMap sigma(X, X, {R("2*X^2", "1-X^2", X) + RationalFunction(P("1", X))});
  RationalMap iota = compose(psi, sigma);
  CHECK(verify_witness(iota, P("X-1", X)));
  CHECK(verify_witness(iota, P("X-2", X)));

  RationalMap lin1(X, X, {RationalFunction(P("2*X+1", X))});
  RationalMap lin2(X, X, {RationalFunction(P("3*X-1", X))});
  CHECK(compose(lin1, lin2).assignments()[0] == RationalFunction(P("6*X-1", X)));
  CHECK(compose(RationalMap::identity(X), psi) == psi);

  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-3, 3);
  auto random_map = [&] {
    MultiPoly x = MultiPoly::variable(X, 0), one = MultiPoly::constant(X, NfElem(1));
    MultiPoly num = NfElem(coef(rng)) * x.pow(2) + NfElem(coef(rng)) * x + one;
    MultiPoly den = x.pow(2) + NfElem(std::abs(coef(rng)) + 1) * one;
    return RationalMap(X, X, {RationalFunction(num, den)});
  };
  for (int i = 0; i < 20; ++i) {
    RationalMap a = random_map(), b = random_map(), c = random_map();
    if (!a.is_nonconstant() || !b.is_nonconstant() || !c.is_nonconstant()) continue;
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
  }
}
