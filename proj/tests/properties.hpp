// Randomized property suites shared by the unit tests and the acceptance run.
#pragma once

#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ratroot/alphabet.hpp"
#include "ratroot/geometry.hpp"
#include "ratroot/witness.hpp"

namespace ratroot::props {

struct SuiteResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::vector<std::string> examples;  // first few failing inputs

  void fail(const std::string& what) {
    ++failures;
    if (examples.size() < 5) examples.push_back(what);
  }

  /// Runs one case; an exception counts as a failure of that case.
  template <class Fn>
  void run(const std::string& label, Fn&& fn) {
    ++cases;
    try {
      fn();
    } catch (const std::exception& e) {
      fail(label + ": threw " + e.what());
    }
  }
};

inline const std::vector<std::string> kX{"X"};
inline const std::vector<std::string> kXY{"X", "Y"};
inline const std::vector<std::string> kXYZ{"X", "Y", "Z"};

class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  int nonzero(int h) {
    int c = uniform(1, h);
    return uniform(0, 1) ? c : -c;
  }
  std::mt19937& rng() { return rng_; }

  /// Dense-ish random polynomial of exact total degree `deg`.
  MultiPoly poly(const std::vector<std::string>& vars, int deg, int height = 5) {
    while (true) {
      MultiPoly p(vars);
      for (const Exponent& e : monomials(vars.size(), deg))
        if (exponent_degree(e) == deg || uniform(0, 2) > 0) p.add_term(e, NfElem(Rational(uniform(-height, height))));
      if (p.total_degree() == deg) return p;
    }
  }

  /// Product of distinct random linear forms with affine terms.
  MultiPoly linear(const std::vector<std::string>& vars) {
    MultiPoly p = MultiPoly::constant(vars, NfElem(Rational(uniform(-4, 4))));
    for (size_t i = 0; i < vars.size(); ++i)
      p += NfElem(Rational(i == 0 ? nonzero(3) : uniform(-3, 3))) * MultiPoly::variable(vars, i);
    return p;
  }

 private:
  static std::vector<Exponent> monomials(size_t n, int deg) {
    std::vector<Exponent> out;
    Exponent e(n, 0);
    std::function<void(size_t, int)> rec = [&](size_t i, int left) {
      if (i + 1 == n) {
        for (int k = 0; k <= left; ++k) {
          e[i] = k;
          out.push_back(e);
        }
        return;
      }
      for (int k = 0; k <= left; ++k) {
        e[i] = k;
        rec(i + 1, left - k);
      }
    };
    rec(0, deg);
    return out;
  }

  std::mt19937 rng_;
};

inline EngineConfig fast_config() {
  EngineConfig cfg;
  cfg.timeout = 20;
  return cfg;
}

inline Verdict decide_fraction(const MultiPoly& p, const MultiPoly& q) {
  return decide(SqrtInput{p, q, p.vars()}, fast_config());
}

/// Random radicand in one or two variables; degrees chosen so that every
/// criterion of the cascade gets exercised.
inline MultiPoly random_radicand(Gen& g) {
  const auto& vars = g.uniform(0, 2) == 0 ? kX : kXY;
  int kind = g.uniform(0, 3);
  if (kind == 0) return g.poly(vars, g.uniform(1, vars.size() == 1 ? 5 : 4));
  if (kind == 1) return g.linear(vars) * g.linear(vars) * g.linear(vars);
  if (kind == 2) return g.poly(vars, 2) * g.linear(vars);
  return g.poly(vars, 2) * g.poly(vars, 2);
}

/// decide(p s^2, q) and decide(p, q) agree.
inline SuiteResult square_multiples(int n, unsigned seed) {
  SuiteResult r{"square-multiple invariance"};
  Gen g(seed);
  for (int i = 0; i < n; ++i) {
    MultiPoly p = random_radicand(g);
    const auto& vars = p.vars();
    MultiPoly q = g.uniform(0, 3) == 0 ? g.linear(vars) : MultiPoly::constant(vars, NfElem(Rational(g.nonzero(6))));
    MultiPoly s = g.uniform(0, 1) ? g.linear(vars) : g.poly(vars, 2);
    std::string label = p.to_string() + " / " + q.to_string() + " with s = " + s.to_string();
    r.run(label, [&] {
      Outcome a = decide_fraction(p, q).outcome;
      Outcome b = decide_fraction(p * s * s, q).outcome;
      Outcome c = decide_fraction(p, q * s * s).outcome;
      if (a != b || a != c) r.fail(label + ": " + to_string(a) + " vs " + to_string(b) + ", " + to_string(c));
    });
  }
  return r;
}

/// Outcome unchanged by X -> A X + b with A invertible over the integers.
inline SuiteResult affine_changes(int n, unsigned seed) {
  SuiteResult r{"affine change invariance"};
  Gen g(seed);
  for (int i = 0; i < n; ++i) {
    MultiPoly p = random_radicand(g);
    const auto& vars = p.vars();
    std::vector<MultiPoly> images;
    if (vars.size() == 1) {
      images.push_back(NfElem(Rational(g.nonzero(4))) * MultiPoly::variable(vars, 0) +
                       MultiPoly::constant(vars, NfElem(Rational(g.uniform(-5, 5)))));
    } else {
      int a, b, c, d;
      do {
        a = g.uniform(-3, 3), b = g.uniform(-3, 3), c = g.uniform(-3, 3), d = g.uniform(-3, 3);
      } while (a * d - b * c == 0);
      MultiPoly x = MultiPoly::variable(vars, 0), y = MultiPoly::variable(vars, 1);
      images.push_back(NfElem(Rational(a)) * x + NfElem(Rational(b)) * y +
                       MultiPoly::constant(vars, NfElem(Rational(g.uniform(-5, 5)))));
      images.push_back(NfElem(Rational(c)) * x + NfElem(Rational(d)) * y +
                       MultiPoly::constant(vars, NfElem(Rational(g.uniform(-5, 5)))));
    }
    MultiPoly one = MultiPoly::constant(vars, NfElem(1));
    MultiPoly moved = p.compose(images);
    std::string label = p.to_string() + " -> " + moved.to_string();
    r.run(label, [&] {
      Outcome a = decide_fraction(p, one).outcome;
      Outcome b = decide_fraction(moved, one).outcome;
      if (a != b) r.fail(label + ": " + to_string(a) + " vs " + to_string(b));
    });
  }
  return r;
}

/// Independent check of a claimed witness: the pulled-back radicand is a
/// nonzero constant times the square of the reported root.
inline bool witness_holds(const RationalMap& m, const RationalFunction& f, const RationalFunction& root) {
  if (!m.is_nonconstant() || root.is_zero()) return false;
  RationalFunction image = substitute(f, m);
  if (image.is_zero()) return false;
  return (image / (root * root)).is_constant();
}

/// Every witness the engine returns survives an independent check; the
/// inputs are biased towards rationalizable radicands.
inline SuiteResult witness_gate(int n, unsigned seed) {
  SuiteResult r{"witness soundness"};
  Gen g(seed);
  int witnesses = 0;
  for (int i = 0; i < n; ++i) {
    int kind = g.uniform(0, 4);
    MultiPoly p;
    if (kind == 0) {
      p = g.poly(kX, g.uniform(1, 2));
    } else if (kind == 1) {
      p = g.poly(g.uniform(0, 1) ? kXY : kXYZ, 2);
    } else if (kind == 2) {
      // cubic curve singular at a random rational point
      MultiPoly u = MultiPoly::variable(kXY, 0) - MultiPoly::constant(kXY, NfElem(Rational(g.uniform(-3, 3))));
      MultiPoly v = MultiPoly::variable(kXY, 1) - MultiPoly::constant(kXY, NfElem(Rational(g.uniform(-3, 3))));
      std::vector<MultiPoly> shift{u, v};
      p = g.poly(kXY, 3).homogeneous_part(3).compose(shift) + g.poly(kXY, 2).homogeneous_part(2).compose(shift);
      if (p.total_degree() != 3) p = p + u * u * u;
    } else if (kind == 3) {
      p = g.linear(kX) * g.linear(kX) * g.poly(kX, 2);
    } else {
      p = random_radicand(g);
    }
    MultiPoly q = MultiPoly::constant(p.vars(), NfElem(Rational(g.nonzero(5))));
    std::string label = p.to_string() + " / " + q.to_string();
    r.run(label, [&] {
      Verdict v = decide_fraction(p, q);
      if (v.outcome != Outcome::Rationalizable && v.witness) r.fail(label + ": witness on a negative verdict");
      if (!v.witness) return;
      ++witnesses;
      if (!v.root || !witness_holds(*v.witness, RationalFunction(p, q), *v.root))
        r.fail(label + ": witness does not rationalize");
    });
  }
  if (witnesses < n / 2) r.fail("only " + std::to_string(witnesses) + " witnesses produced");
  return r;
}

/// Alphabet outcome does not depend on the order of the roots; emitted
/// simultaneous witnesses are checked for every root.
inline SuiteResult alphabet_permutations(int n, unsigned seed) {
  SuiteResult r{"alphabet permutation invariance"};
  Gen g(seed);
  AlphabetOptions opt;
  opt.engine = fast_config();
  for (int i = 0; i < n; ++i) {
    const auto& vars = g.uniform(0, 3) == 0 ? kXY : kX;
    std::vector<AlphabetEntry> roots;
    int k = g.uniform(2, 4);
    for (int j = 0; j < k; ++j) {
      MultiPoly p = g.uniform(0, 2) ? g.linear(vars) : g.poly(vars, 2);
      roots.push_back({SqrtInput{p, MultiPoly::constant(vars, NfElem(1)), vars}, ""});
    }
    auto shuffled = roots;
    std::shuffle(shuffled.begin(), shuffled.end(), g.rng());
    std::string label;
    for (const auto& e : roots) label += "sqrt(" + e.input.numerator.to_string() + ") ";
    r.run(label, [&] {
      AlphabetVerdict a = decide_alphabet(roots, opt);
      AlphabetVerdict b = decide_alphabet(shuffled, opt);
      if (a.outcome != b.outcome) r.fail(label + ": " + to_string(a.outcome) + " vs " + to_string(b.outcome));
      for (const AlphabetVerdict* v : {&a, &b}) {
        if (!v->witness) continue;
        const auto& src = v == &a ? roots : shuffled;
        for (size_t j = 0; j < src.size(); ++j)
          if (!witness_holds(*v->witness, RationalFunction(src[j].input.numerator), v->roots[j]))
            r.fail(label + ": simultaneous witness fails on root " + std::to_string(j + 1));
      }
    });
  }
  return r;
}

/// Total Milnor number of constructed branch curves. Irreducible curves
/// y^m = g(x) obey (D-1)(D-2); unions of lines and conics obey the weaker
/// (D-1)^2, which is what the classifier enforces for arbitrary curves.
inline SuiteResult milnor_bound(int n, unsigned seed) {
  SuiteResult r{"total Milnor number bound"};
  Gen g(seed);
  MultiPoly x = MultiPoly::variable(kXY, 0), y = MultiPoly::variable(kXY, 1);
  for (int i = 0; i < n; ++i) {
    MultiPoly f;
    bool irreducible = g.uniform(0, 1) == 0;
    if (irreducible) {
      // g(x) keeps a simple factor, so y^m - g(x) is irreducible
      MultiPoly gx = g.linear(kX);
      int target = g.uniform(0, 1) ? 4 : 6;
      while (gx.total_degree() < target) {
        MultiPoly fac = g.linear(kX);
        int e = std::min(target - gx.total_degree(), g.uniform(1, 3));
        gx = gx * fac.pow(e);
      }
      int m = g.uniform(2, 3);
      f = y.pow(m) - gx.with_vars(kXY);
    } else {
      int target = g.uniform(3, 5);
      f = g.linear(kXY);
      while (f.total_degree() < target)
        f = f * (target - f.total_degree() >= 2 && g.uniform(0, 1) ? g.poly(kXY, 2) : g.linear(kXY));
    }
    if (squarefree_part(f) != f.monic()) continue;
    r.run(f.to_string(), [&] {
      GeometricModel model = build_model(f);
      SimplicityReport rep = all_simple(model);
      const int D = model.B->total_degree();
      const int bound = irreducible && D == f.total_degree() ? (D - 1) * (D - 2) : (D - 1) * (D - 1);
      if (rep.total_milnor > bound)
        r.fail(f.to_string() + ": total Milnor number " + std::to_string(rep.total_milnor) + " > " +
               std::to_string(bound));
    });
  }
  return r;
}

}  // namespace ratroot::props
