// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "properties.hpp"
#include "ratroot/parser.hpp"
#include "ratroot/report.hpp"

using namespace ratroot;
using json = nlohmann::json;

namespace {

struct Check {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back(what);
    }
  }
  void info(const std::string& what) { notes.push_back(what); }
};

struct Criterion {
  int id;
  std::string name;
  double limit;  // seconds
  std::function<void(Check&)> body;
};

std::string read(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<AlphabetEntry> alphabet(const std::string& name) {
  return parse_alphabet(read(std::string(RATROOT_DATA_DIR) + "/alphabets/" + name + ".json"));
}

Verdict root(const std::string& text) {
  SqrtInput in = parse_radicand(text);
  return decide(in);
}

bool has_rule(const Verdict& v, const std::string& rule) {
  for (const auto& s : v.steps)
    if (s.rule == rule) return true;
  return false;
}

bool witness_ok(const Verdict& v, const std::string& text) {
  if (!v.witness) return false;
  SqrtInput in = parse_radicand(text);
  return verify_witness(*v.witness, RationalFunction(in.numerator, in.denominator)).has_value();
}

bool all_simple(const std::vector<SingularityRecord>& rs) {
  for (const auto& r : rs)
    if (!r.is_simple()) return false;
  return true;
}

void timed(Check& c, double limit, const std::string& what, const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.expect(dt < limit, what + " took " + std::to_string(dt) + " s");
}

void suite(Check& c, const props::SuiteResult& r) {
  c.expect(r.cases >= 200, r.name + ": only " + std::to_string(r.cases) + " cases");
  c.expect(r.failures == 0, r.name + ": " + std::to_string(r.failures) + " failures");
  for (const auto& e : r.examples) c.info("  " + e);
}

struct CatalogRow {
  const char* g;
  const char* label;
  int mu;
};

const CatalogRow kCatalog[] = {
    {"x^2 + y^2", "A1", 1},   {"x^2 + y^3", "A2", 2},      {"x^2 + y^4", "A3", 3},
    {"x^2 + y^5", "A4", 4},   {"x^2 + y^6", "A5", 5},      {"x^2*y - y^3", "D4", 4},
    {"x^3 + y^4", "E6", 6},   {"x^3 + x*y^3", "E7", 7},    {"x^3 + y^5", "E8", 8},
    {"x^3 + y^6", "NonSimple", 10}, {"x^4 + y^4", "NonSimple", 9},
};

std::vector<Criterion> criteria() {
  std::vector<Criterion> out;

  out.push_back({1, "definition examples", 2, [](Check& c) {
    timed(c, 1, "1-X^2", [&] {
      Verdict v = root("1-X^2");
      c.expect(v.outcome == Outcome::Rationalizable, "1-X^2: " + to_string(v.outcome));
      c.expect(witness_ok(v, "1-X^2"), "1-X^2: no verified witness");
    });
    timed(c, 1, "1-X^3", [&] {
      Verdict v = root("1-X^3");
      c.expect(v.outcome == Outcome::NotRationalizable, "1-X^3: " + to_string(v.outcome));
    });
  }});

  out.push_back({2, "Bhabha radicand", 10, [](Check& c) {
    Verdict v = root("(X+Y)*(1+X*Y)/(X + Y - 4*X*Y + X^2*Y + X*Y^2)");
    c.expect(v.outcome == Outcome::NotRationalizable, "outcome " + to_string(v.outcome));
    const auto& last = v.steps.back();
    c.expect(last.rule == "bivariate-simple-singularities", "decided by " + last.rule);
    c.expect(last.data.value("degree", 0) == 6, "degree " + last.data.value("degree", json()).dump());
    c.expect(!v.singularities.empty() && all_simple(v.singularities), "singularity table is not all simple");
  }});

  out.push_back({3, "Higgs alphabet", 2, [](Check& c) {
    AlphabetVerdict v = decide_alphabet(alphabet("higgs"));
    c.expect(v.outcome == Outcome::NotRationalizable, "outcome " + to_string(v.outcome));
    if (!v.certificate) return c.expect(false, "no certificate");
    const MultiPoly& p = v.certificate->product;
    c.expect(p.total_degree() == 3, "product degree " + std::to_string(p.total_degree()));
    c.expect(effective_vars(p).size() == 1, "product is not univariate");
    c.expect(squarefree_part(p) == p.monic(), "product is not squarefree");
  }});

  out.push_back({4, "di-jet alphabet", 60, [](Check& c) {
    auto roots = alphabet("dijet");
    AlphabetVerdict v = decide_alphabet(roots);
    c.expect(v.outcome == Outcome::NotRationalizable, "outcome " + to_string(v.outcome));
    if (v.certificate) {
      c.expect(v.certificate->verdict.steps.back().rule == "bivariate-simple-singularities",
               "certificate decided by " + v.certificate->verdict.steps.back().rule);
      c.expect(all_simple(v.certificate->verdict.singularities), "certificate has a non-simple point");
      std::string subset;
      for (size_t i : v.certificate->subset) subset += (subset.empty() ? "" : ",") + std::to_string(i + 1);
      c.info("certificate {" + subset + "} of degree " + std::to_string(v.certificate->product.total_degree()));
    } else {
      c.expect(false, "no certificate");
    }
    // the product of all five roots
    std::vector<MultiPoly> rads;
    for (const auto& e : roots) rads.push_back(e.input.numerator * e.input.denominator);
    SubsetProduct all = subset_products(rads).back();
    c.expect(all.product.total_degree() == 6, "full product degree " + std::to_string(all.product.total_degree()));
    Verdict full = decide(SqrtInput{all.product, MultiPoly::constant(all.product.vars(), NfElem(1)), all.product.vars()});
    c.expect(full.outcome == Outcome::NotRationalizable, "full product " + to_string(full.outcome));
    c.expect(!full.singularities.empty() && all_simple(full.singularities), "full product is not all simple");
    c.info("full product {1,2,3,4,5} of degree 6: " + to_string(full.outcome) + ", " +
           std::to_string(full.singularities.size()) + " singular points, all simple");
  }});

  out.push_back({5, "Fermat quartics", 20, [](Check& c) {
    timed(c, 10, "X1^4+X2^4", [&] {
      Verdict v = root("X1^4+X2^4");
      c.expect(v.outcome == Outcome::NotRationalizable, "X1^4+X2^4: " + to_string(v.outcome));
      bool found = false;
      for (const auto& s : v.steps)
        if (s.rule == "homogeneous-reduction")
          found = parse_poly(s.data.value("reduced", ""), {"X1"}) == parse_poly("X1^4+1", {"X1"});
      c.expect(found, "X1^4+X2^4: not reduced to X^4+1");
    });
    timed(c, 10, "X1^4+X2^4+X3^4", [&] {
      Verdict v = root("X1^4+X2^4+X3^4");
      c.expect(v.outcome == Outcome::Rationalizable, "X1^4+X2^4+X3^4: " + to_string(v.outcome));
      c.expect(has_rule(v, "homogeneous-reduction"), "X1^4+X2^4+X3^4: no homogeneous reduction");
    });
  }});

  out.push_back({6, "Drell-Yan alphabet", 120, [](Check& c) {
    AlphabetVerdict v = decide_alphabet(alphabet("drellyan"));
    c.expect(v.outcome == Outcome::Inconclusive, "outcome " + to_string(v.outcome));
    int blocked = 0;
    for (const auto& a : v.audit) {
      c.expect(a.outcome != Outcome::NotRationalizable, "a subset product was declared not rationalizable");
      if (a.outcome == Outcome::Inconclusive) {
        c.expect(a.degree == 6 || a.degree == 8, "inconclusive product of degree " + std::to_string(a.degree));
        ++blocked;
      }
    }
    c.expect(blocked == 2, std::to_string(blocked) + " blocked products");
    bool non_simple = false;
    for (const auto& t : v.trace) non_simple |= t.find("non-simple") != std::string::npos;
    c.expect(non_simple, "trace does not mention non-simple singularities");
  }});

  out.push_back({7, "pair with a dead-end seed", 5, [](Check& c) {
    auto roots = alphabet("pair");
    AlphabetOptions opt;
    opt.seeds.push_back(parse_map(json{{"X", "X^4+1"}}, {"X"}));
    AlphabetVerdict v = decide_alphabet(roots, opt);
    c.expect(v.outcome == Outcome::Rationalizable, "outcome " + to_string(v.outcome));
    if (!v.witness) return c.expect(false, "no witness");
    for (const auto& e : roots)
      c.expect(verify_witness(*v.witness, RationalFunction(e.input.numerator, e.input.denominator)).has_value(),
               "witness fails on " + e.input.numerator.to_string());
    bool dead_end = false;
    for (const auto& t : v.trace) dead_end |= t.find("dead end") != std::string::npos;
    c.expect(dead_end, "trace shows no recovered dead end");
  }});

  out.push_back({8, "singularity catalog", 5, [](Check& c) {
    for (const auto& row : kCatalog) {
      MultiPoly g = parse_poly(row.g, {"x", "y"});
      int a = milnor_fulton(g), b = milnor_quotient(g);
      c.expect(a == row.mu && b == row.mu,
               std::string(row.g) + ": mu " + std::to_string(a) + "/" + std::to_string(b));
      std::string label = classify_local(g).label();
      c.expect(label == row.label, std::string(row.g) + ": " + label);
    }
  }});

  out.push_back({9, "property suites", 600, [](Check& c) {
    suite(c, props::square_multiples(200, 7001));
    suite(c, props::affine_changes(200, 7002));
    suite(c, props::witness_gate(200, 7003));
    suite(c, props::alphabet_permutations(200, 7004));
    suite(c, props::milnor_bound(240, 7005));
  }});

  out.push_back({10, "determinism", 120, [](Check& c) {
    json corpus = json::parse(read(std::string(RATROOT_DATA_DIR) + "/corpus.json"));
    CorpusResult a = run_corpus(corpus, AlphabetOptions{});
    CorpusResult b = run_corpus(corpus, AlphabetOptions{});
    c.expect(a.mismatches == 0, std::to_string(a.mismatches) + " corpus mismatches");
    c.expect(without_timings(a.reports).dump() == without_timings(b.reports).dump(), "reports differ");
  }});

  return out;
}

}  // namespace

int main() {
  int failed = 0;
  for (const auto& cr : criteria()) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      cr.body(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("threw ") + e.what());
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.expect(dt < cr.limit, "over the " + std::to_string(cr.limit) + " s limit");
    if (!c.ok) ++failed;
    std::cout << (c.ok ? "PASS" : "FAIL") << " " << std::setw(2) << cr.id << " " << cr.name << " (" << std::fixed
              << std::setprecision(2) << dt << " s)\n";
    for (const auto& n : c.notes) std::cout << "       " << n << "\n";
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed" : std::string("all criteria passed")) << "\n";
  return failed ? 1 : 0;
}
