#include <doctest.h>

#include "ratroot/engine.hpp"
#include "ratroot/witness.hpp"

using namespace ratroot;

namespace {

const char* kBhabha = "(X+Y)*(1+X*Y)/(X + Y - 4*X*Y + X^2*Y + X*Y^2)";

Verdict run(const std::string& s, const EngineConfig& c = {}) { return decide(parse_radicand(s), c); }

const Step& last(const Verdict& v) { return v.steps.back(); }

bool has_rule(const Verdict& v, const std::string& rule) {
  for (const auto& s : v.steps)
    if (s.rule == rule) return true;
  return false;
}

}  // namespace

TEST_CASE("univariate examples") {
  Verdict circle = run("1 - X^2");
  CHECK(circle.outcome == Outcome::Rationalizable);
  REQUIRE(circle.witness);
  SqrtInput in = parse_radicand("1 - X^2");
  CHECK(verify_witness(*circle.witness, in.numerator));

  Verdict cubic = run("1 - X^3");
  CHECK(cubic.outcome == Outcome::NotRationalizable);
  CHECK(last(cubic).rule == "univariate-degree");
  CHECK(last(cubic).terminal);

  CHECK(run("X^4 + 1").outcome == Outcome::NotRationalizable);
  CHECK(run("X*(X-1)*(X-2)").outcome == Outcome::NotRationalizable);

  Verdict lin = run("X - 1");
  REQUIRE(lin.witness);
  CHECK(lin.witness->assignments()[0] == RationalFunction(parse_poly("X^2+1", {"X"})));

  // odd multiplicities only count once
  CHECK(run("(X-1)^3*(X-2)^2").outcome == Outcome::Rationalizable);
  CHECK(run("(X-1)^3*(X-2)*(X-3)^5").outcome == Outcome::NotRationalizable);

  MultiPoly g = parse_poly("X^4 + 1", {"X"});
  CHECK(decide_univariate(g).outcome == Outcome::NotRationalizable);
  Verdict u = decide_univariate(parse_poly("(X-1)^2*(X+1)", {"X"}));
  CHECK(u.outcome == Outcome::Rationalizable);
  CHECK(u.root);
}

TEST_CASE("trivial radicands") {
  Verdict zero = run("0");
  CHECK(zero.outcome == Outcome::Rationalizable);
  CHECK(last(zero).terminal);
  Verdict sq = run("(X+Y)^2/(X-Y)^4");
  CHECK(sq.outcome == Outcome::Rationalizable);
  REQUIRE(sq.witness);
  CHECK(sq.root);
  CHECK(run("-7").outcome == Outcome::Rationalizable);
}

TEST_CASE("bivariate examples") {
  Verdict b = run(kBhabha);
  CHECK(b.outcome == Outcome::NotRationalizable);
  CHECK(last(b).rule == "bivariate-simple-singularities");
  CHECK(last(b).data["degree"] == 6);
  CHECK(last(b).data["all_simple"] == true);
  CHECK_FALSE(b.singularities.empty());
  for (const auto& r : b.singularities) CHECK(r.is_simple());

  Verdict dijet = decide_bivariate(parse_poly("(X+1)*(X-1)*(Y+1)*(X+Y+1)*(16*X+(4+Y)^2)", {"X", "Y"}));
  CHECK(dijet.outcome == Outcome::NotRationalizable);

  Verdict quartic = run("X^4 + Y^4 + 1");
  CHECK(quartic.outcome == Outcome::Rationalizable);
  CHECK(quartic.existence_by_theorem != quartic.witness.has_value());

  // the cubic cone XY(X+Y) is rationalizable
  Verdict cone = run("X*Y*(X+Y)");
  CHECK(cone.outcome == Outcome::Rationalizable);
  CHECK(cone.witness);

  // a nodal cubic gets a projection witness
  Verdict nodal = run("Y^2 - X^2*(X+1)");
  CHECK(nodal.outcome == Outcome::Rationalizable);
  CHECK(nodal.witness);
  CHECK(last(nodal).rule == "cubic-triple-point");

  // smooth cubic: existence only
  Verdict smooth = run("X^3 + Y^3 + 1");
  CHECK(smooth.outcome == Outcome::Rationalizable);
  CHECK(smooth.existence_by_theorem);
  CHECK_FALSE(smooth.witness);
}

TEST_CASE("homogeneous reduction") {
  Verdict two = run("X1^4 + X2^4");
  CHECK(two.outcome == Outcome::NotRationalizable);
  CHECK(has_rule(two, "homogeneous-reduction"));
  CHECK(last(two).rule == "univariate-degree");

  Verdict three = run("X1^4 + X2^4 + X3^4");
  CHECK(three.outcome == Outcome::Rationalizable);
  CHECK(has_rule(three, "homogeneous-reduction"));

  CHECK(run("X^2*Y^2 - X^4 + 2*Y^4").outcome == Outcome::NotRationalizable);
  Verdict lifted = run("X*Y*(X^2 - Y^2)");
  CHECK(lifted.outcome == Outcome::NotRationalizable);
  Verdict lw = run("(X^2 + Y^2)*(X^2 - 2*Y^2)*X*Y");
  CHECK(lw.outcome == Outcome::NotRationalizable);
  // witness lifted through the reduction
  Verdict q = run("X^2 + 3*X*Y - Y^2");
  CHECK(q.outcome == Outcome::Rationalizable);
  REQUIRE(q.witness);
  CHECK(q.root);
  Verdict quad = run("X*Y*Z*T");
  CHECK(quad.outcome == Outcome::Rationalizable);
  CHECK(has_rule(quad, "homogeneous-reduction"));
  REQUIRE(quad.witness);
  CHECK(quad.witness->source().size() == 4);
}

TEST_CASE("cones are moved to their vertex") {
  Verdict quartic = run("(X-1)^4 + (Y+2)^4");
  CHECK(quartic.outcome == Outcome::NotRationalizable);
  CHECK(has_rule(quartic, "homogeneous-reduction"));
  CHECK(last(quartic).rule == "univariate-degree");

  SqrtInput in = parse_radicand("(X-1)*(Y-2)*(Z+1)*(T-3)");
  Verdict v = decide(in);
  CHECK(v.outcome == Outcome::Rationalizable);
  REQUIRE(v.witness);
  CHECK(verify_witness(*v.witness, in.numerator));

  // no vertex: not a cone
  CHECK_FALSE(has_rule(run("X^4 + Y^4 + X"), "homogeneous-reduction"));
}

TEST_CASE("variable pruning") {
  Verdict v = run("X1 - 1");
  CHECK(v.outcome == Outcome::Rationalizable);
  SqrtInput in = parse_radicand("X1^3 - 1", std::vector<std::string>{"X1", "X2"});
  Verdict w = decide(in);
  CHECK(w.outcome == Outcome::NotRationalizable);
  CHECK(w.steps[1].rule == "variable-pruning");
  SqrtInput lin = parse_radicand("X2 - 1", std::vector<std::string>{"X1", "X2"});
  Verdict l = decide(lin);
  REQUIRE(l.witness);
  CHECK(l.witness->source() == std::vector<std::string>{"X1", "X2"});
  CHECK(l.root);
}

TEST_CASE("higher dimensions") {
  Verdict a = run("X*Y*Z + 1");
  CHECK(a.outcome == Outcome::Rationalizable);
  CHECK(a.witness);
  CHECK(last(a).rule == "high-multiplicity-point");
}

TEST_CASE("timeouts become inconclusive") {
  EngineConfig c;
  c.timeout = 0;
  Verdict v = run(kBhabha, c);
  CHECK(v.outcome == Outcome::Inconclusive);
  CHECK(last(v).rule == "inconclusive");
  bool saw_limit = false;
  for (const auto& s : v.steps) saw_limit |= s.data.contains("error");
  CHECK(saw_limit);
}

TEST_CASE("determinism") {
  Verdict a = run(kBhabha), b = run(kBhabha);
  REQUIRE(a.steps.size() == b.steps.size());
  for (size_t i = 0; i < a.steps.size(); ++i) {
    CHECK(a.steps[i].rule == b.steps[i].rule);
    CHECK(a.steps[i].data == b.steps[i].data);
  }
}
