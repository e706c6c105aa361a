#include "ratroot/engine.hpp"

#include <chrono>
#include <functional>

#include "ratroot/deadline.hpp"
#include "ratroot/factor.hpp"
#include "ratroot/witness.hpp"

namespace ratroot {

namespace {

using nlohmann::json;

namespace ref {
const char* const kDefinition =
    "Definition (rationalizability): \"Otherwise, we say that $\\sqrt{f/g}$ is {\\it not rationalizable}\"";
const char* const kSquares =
    "Lemma (square multiples): \"$\\sqrt{p}$ is rationalizable if and only if $\\sqrt{pq^2}$ is rationalizable\"; "
    "Corollary: \"there exists a squarefree polynomial $f\\in R$\"";
const char* const kPruning =
    "Corollary (fewer variables): \"the square root of $f$ viewed as polynomial in $R^\\prime$ is rationalizable "
    "if and only if the square root of $f$ viewed as polynomial in $R$ is\"";
const char* const kProjection =
    "Corollary (projection): \"If $\\overline{V}$ has a point of multiplicity $d-1$, then $\\sqrt{f}$ is "
    "rationalizable. In particular, if $d\\leq 2$, then $\\sqrt{f}$ is rationalizable\"";
const char* const kHomogeneous =
    "Proposition (homogeneous reduction): \"if $d$ is even, then $\\sqrt{f}$ is rationalizable if and only if "
    "$\\sqrt{F}$ is\"";
const char* const kUnivariate =
    "Corollary (one variable): \"If $f$ is a polynomial in one variable, then $\\sqrt{f}$ is rationalizable if and "
    "only if $d\\leq 2$\"; Remark: \"at most two zeros with odd multiplicity\"";
const char* const kCubic =
    "Corollary (cubic surfaces): \"Then $\\sqrt{f}$ is rationalizable if and only if $\\overline{V}$ has no "
    "singular points of multiplicity $3$\"";
const char* const kSimple =
    "Theorem (two variables): \"If $f$ is a polynomial in two variables and $\\overline{S}$ has at most rational "
    "simple singularities, then $\\sqrt{f}$ is rationalizable if and only if $d\\leq 4$\"";
}  // namespace ref

std::string str(const NfElem& e) { return e.to_string(); }

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

RationalFunction lift_to(const RationalFunction& r, const std::vector<std::string>& vars) {
  return RationalFunction(r.num().with_vars(vars), r.den().with_vars(vars));
}

/// A point where f has multiplicity deg f, i.e. f is a cone with that
/// vertex: the (d-1)-th partials are linear and vanish there.
std::optional<std::vector<NfElem>> cone_vertex(const MultiPoly& f) {
  const size_t n = f.nvars();
  const int d = f.total_degree();
  std::vector<MultiPoly> lin;
  std::function<void(const MultiPoly&, size_t, int)> rec = [&](const MultiPoly& g, size_t from, int left) {
    if (left == 0) {
      if (!g.is_zero()) lin.push_back(g);
      return;
    }
    for (size_t i = from; i < n; ++i) rec(g.derivative(i), i, left - 1);
  };
  rec(f, 0, d - 1);
  // rows [a_1 .. a_n | -c] of a_1 x_1 + .. + a_n x_n + c = 0
  std::vector<std::vector<NfElem>> rows;
  for (const auto& g : lin) {
    std::vector<NfElem> row(n + 1, NfElem(0));
    for (size_t i = 0; i < n; ++i) {
      Exponent e(n, 0);
      e[i] = 1;
      row[i] = g.coeff(e);
    }
    row[n] = -g.coeff(Exponent(n, 0));
    rows.push_back(std::move(row));
  }
  std::vector<int> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < n && r < rows.size(); ++c) {
    size_t p = r;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    NfElem inv = rows[r][c].inverse();
    for (auto& x : rows[r]) x = x * inv;
    for (size_t k = 0; k < rows.size(); ++k) {
      if (k == r || rows[k][c].is_zero()) continue;
      NfElem m = rows[k][c];
      for (size_t j = c; j <= n; ++j) rows[k][j] = rows[k][j] - m * rows[r][j];
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  for (size_t k = r; k < rows.size(); ++k)
    if (!rows[k][n].is_zero()) return std::nullopt;
  std::vector<NfElem> x(n, NfElem(0));
  for (size_t k = 0; k < r; ++k) x[pivot_col[k]] = rows[k][n];
  std::vector<MultiPoly> shift;
  for (size_t i = 0; i < n; ++i)
    shift.push_back(MultiPoly::variable(f.vars(), i) + MultiPoly::constant(f.vars(), x[i]));
  auto h = is_homogeneous(f.compose(shift));
  if (!h || *h != d) return std::nullopt;
  return x;
}

class Cascade {
 public:
  explicit Cascade(const EngineConfig& cfg) : cfg_(cfg) {}

  /// f squarefree, monic and nonconstant in its ring; the witness has
  /// source and target equal to that ring.
  Verdict run(const MultiPoly& f, const NfElem& unit) {
    Verdict v;
    v.reduced = f;
    std::vector<std::string> eff = effective_vars(f);
    if (eff.size() < f.nvars()) {
      if (prune(v, f, unit, eff)) return v;
    }
    const int d = f.total_degree();
    const size_t n = f.nvars();
    bool decided = false;
    if (d <= 2) decided = attempt(v, "quadric-projection", ref::kProjection, f, [&](Step& s, Verdict& out) {
      return quadric(s, out, f, unit);
    });
    if (!decided && n >= 2 && d % 2 == 0) {
      if (is_homogeneous(f)) {
        decided = attempt(v, "homogeneous-reduction", ref::kHomogeneous, f, [&](Step& s, Verdict& out) {
          return dehomogenize_and_recurse(s, out, f, unit);
        });
      } else if (auto a = cone_vertex(f)) {
        decided = attempt(v, "homogeneous-reduction", ref::kHomogeneous, f, [&](Step& s, Verdict& out) {
          return translate_and_recurse(s, out, f, unit, *a);
        });
      }
    }
    if (!decided && n == 1) decided = attempt(v, "univariate-degree", ref::kUnivariate, f, [&](Step& s, Verdict& out) {
      return univariate(s, out, f);
    });
    if (!decided && n == 2 && d == 3)
      decided = attempt(v, "cubic-triple-point", ref::kCubic, f, [&](Step& s, Verdict& out) {
        return cubic(s, out, f, unit);
      });
    if (!decided && n == 2 && d > 3)
      decided = attempt(v, "bivariate-simple-singularities", ref::kSimple, f, [&](Step& s, Verdict& out) {
        return simple(s, out, f, unit);
      });
    if (!decided && d > 2)
      decided = attempt(v, "high-multiplicity-point", ref::kProjection, f, [&](Step& s, Verdict& out) {
        return high_mult(s, out, f, unit);
      });
    if (!decided) {
      Step s{"inconclusive", ref::kDefinition, f.to_string()};
      json tried = json::array();
      for (const auto& st : v.steps) tried.push_back(st.rule);
      s.data["attempted"] = tried;
      s.data["reason"] = "no criterion applies and no projection center was found";
      v.outcome = Outcome::Inconclusive;
      v.steps.push_back(s);
    }
    return v;
  }

 private:
  template <class Fn>
  bool attempt(Verdict& v, const std::string& rule, const char* paper_ref, const MultiPoly& f, Fn fn) {
    Step s{rule, paper_ref, f.to_string()};
    Verdict tail;
    bool decided = false;
    auto t0 = Clock::now();
    try {
      DeadlineScope scope(cfg_.timeout, rule);
      decided = fn(s, tail);
    } catch (const ResourceExhausted& e) {
      s.data["error"] = "resource limit: " + std::string(e.what());
    } catch (const Unsupported& e) {
      s.data["error"] = "unsupported: " + std::string(e.what());
    }
    s.seconds = since(t0);
    s.terminal = decided && tail.steps.empty();
    v.steps.push_back(std::move(s));
    for (auto& st : tail.steps) v.steps.push_back(std::move(st));
    if (!tail.singularities.empty() && v.singularities.empty()) v.singularities = tail.singularities;
    if (decided) {
      v.outcome = tail.outcome;
      v.witness = std::move(tail.witness);
      v.existence_by_theorem = tail.existence_by_theorem;
    }
    return decided;
  }

  bool prune(Verdict& v, const MultiPoly& f, const NfElem& unit, const std::vector<std::string>& eff) {
    Step s{"variable-pruning", ref::kPruning, f.to_string()};
    json dropped = json::array();
    for (const auto& x : f.vars())
      if (var_index(eff, x) < 0) dropped.push_back(x);
    s.data["kept"] = eff;
    s.data["dropped"] = dropped;
    v.steps.push_back(s);
    Verdict sub = run(restrict_to_effective(f), unit);
    for (auto& st : sub.steps) v.steps.push_back(std::move(st));
    v.singularities = std::move(sub.singularities);
    v.outcome = sub.outcome;
    v.existence_by_theorem = sub.existence_by_theorem;
    if (sub.witness) {
      // identity on the dropped variables
      const auto& vars = f.vars();
      std::vector<RationalFunction> assign;
      for (size_t i = 0; i < vars.size(); ++i) {
        const RationalFunction* a = sub.witness->assignment(vars[i]);
        assign.push_back(a ? lift_to(*a, vars) : RationalFunction(MultiPoly::variable(vars, i)));
      }
      v.witness = RationalMap(vars, vars, assign);
    }
    return true;
  }

  void projection_witness(Step& s, Verdict& out, const GeometricModel& model, const AlgebraicPoint& q) {
    WitnessReport r = parametrize_from_point(model.V, q, model.f.vars(), model.unit * model.f);
    s.data["center"] = to_json(q);
    s.data["witness"] = to_json(r.map);
    out.witness = r.map;
  }

  /// Witness for a case already decided as rationalizable; absence is
  /// recorded as existence by theorem.
  void try_witness(Step& s, Verdict& out, const GeometricModel& model) {
    try {
      HighMultResult h = high_mult_point_search(model, {cfg_.max_height, cfg_.scan_budget});
      if (h.point) {
        projection_witness(s, out, model, *h.point);
        return;
      }
      s.data["witness_search"] = h.method + (h.certified_empty ? ": no point of multiplicity d-1" : ": none found");
    } catch (const Error& e) {
      if (dynamic_cast<const InternalError*>(&e)) throw;
      s.data["witness_search"] = std::string("failed: ") + e.what();
    }
    out.existence_by_theorem = true;
    s.data["existence_by_theorem"] = true;
  }

  bool quadric(Step& s, Verdict& out, const MultiPoly& f, const NfElem& unit) {
    GeometricModel model = build_model(f, unit);
    s.data["degree"] = model.d;
    out.outcome = Outcome::Rationalizable;
    try {
      projection_witness(s, out, model, point_on_quadric(model, cfg_.max_height));
    } catch (const DegenerateProjection& e) {
      s.data["witness_search"] = std::string("failed: ") + e.what();
      out.existence_by_theorem = true;
      s.data["existence_by_theorem"] = true;
    }
    return true;
  }

  bool dehomogenize_and_recurse(Step& s, Verdict& out, const MultiPoly& f, const NfElem& unit) {
    const auto& vars = f.vars();
    const size_t last = vars.size() - 1;
    std::vector<std::string> rest(vars.begin(), vars.end() - 1);
    SquareReduction sr = square_reduce(f.substitute_value(last, NfElem(1)).with_vars(rest));
    s.data["variable"] = vars[last];
    s.data["degree"] = f.total_degree();
    s.data["reduced"] = sr.f.to_string();
    if (sr.f.is_constant()) throw InternalError("dehomogenized radicand is constant");
    Verdict sub = run(sr.f, unit * sr.unit);
    out.steps = std::move(sub.steps);
    out.singularities = std::move(sub.singularities);
    out.outcome = sub.outcome;
    out.existence_by_theorem = sub.existence_by_theorem;
    if (sub.witness) {
      // X_i -> phi_i * X_n, X_n -> X_n
      MultiPoly xn = MultiPoly::variable(vars, last);
      std::vector<RationalFunction> assign;
      for (const auto& x : rest) assign.push_back(lift_to(*sub.witness->assignment(x), vars) * RationalFunction(xn));
      assign.emplace_back(xn);
      out.witness = RationalMap(vars, vars, assign);
    }
    return true;
  }

  /// A cone with vertex a: X -> X + a makes f homogeneous, and a witness
  /// psi of the translate gives psi + a for f.
  bool translate_and_recurse(Step& s, Verdict& out, const MultiPoly& f, const NfElem& unit,
                             const std::vector<NfElem>& a) {
    const auto& vars = f.vars();
    std::vector<MultiPoly> shift;
    json vertex = json::array();
    for (size_t i = 0; i < vars.size(); ++i) {
      shift.push_back(MultiPoly::variable(vars, i) + MultiPoly::constant(vars, a[i]));
      vertex.push_back(str(a[i]));
    }
    MultiPoly g = f.compose(shift);
    s.data["vertex"] = vertex;
    s.data["translated"] = g.to_string();
    Verdict inner;
    dehomogenize_and_recurse(s, inner, g, unit);
    out.steps = std::move(inner.steps);
    out.singularities = std::move(inner.singularities);
    out.outcome = inner.outcome;
    out.existence_by_theorem = inner.existence_by_theorem;
    if (inner.witness) {
      std::vector<RationalFunction> assign;
      for (size_t i = 0; i < vars.size(); ++i)
        assign.push_back(inner.witness->assignments()[i] + RationalFunction(MultiPoly::constant(vars, a[i])));
      out.witness = RationalMap(vars, vars, assign);
    }
    return true;
  }

  bool univariate(Step& s, Verdict& out, const MultiPoly& f) {
    const int d = f.total_degree();
    s.data["degree"] = d;
    s.data["odd_multiplicity_roots"] = d;
    out.outcome = d <= 2 ? Outcome::Rationalizable : Outcome::NotRationalizable;
    return true;
  }

  bool cubic(Step& s, Verdict& out, const MultiPoly& f, const NfElem& unit) {
    GeometricModel model = build_model(f, unit);
    s.data["hypersurface"] = model.V.to_string();
    if (auto p = triple_point_of_cubic(model.V)) {
      s.data["triple_point"] = to_json(*p);
      out.outcome = Outcome::NotRationalizable;
      return true;
    }
    s.data["triple_point"] = nullptr;
    out.outcome = Outcome::Rationalizable;
    try_witness(s, out, model);
    return true;
  }

  bool simple(Step& s, Verdict& out, const MultiPoly& f, const NfElem& unit) {
    GeometricModel model = build_model(f, unit);
    SimplicityReport rep = all_simple(model);
    s.data["branch_curve"] = model.B->to_string();
    s.data["degree"] = rep.degree;
    s.data["total_milnor"] = rep.total_milnor;
    s.data["all_simple"] = rep.all_simple;
    json recs = json::array();
    for (const auto& r : rep.records) recs.push_back(to_json(r));
    s.data["singularities"] = recs;
    out.singularities = rep.records;
    if (!rep.all_simple) {
      int bad = 0;
      for (const auto& r : rep.records)
        if (!r.is_simple()) bad += r.point.orbit_size;
      s.data["reason"] = std::to_string(bad) + " non-simple singular point" + (bad == 1 ? "" : "s") +
                         ": the criterion does not apply";
      return false;
    }
    if (model.d <= 4) {
      out.outcome = Outcome::Rationalizable;
      try_witness(s, out, model);
    } else {
      out.outcome = Outcome::NotRationalizable;
    }
    return true;
  }

  bool high_mult(Step& s, Verdict& out, const MultiPoly& f, const NfElem& unit) {
    GeometricModel model = build_model(f, unit);
    HighMultResult h = high_mult_point_search(model, {cfg_.max_height, cfg_.scan_budget});
    s.data["method"] = h.method;
    s.data["certified_empty"] = h.certified_empty;
    if (!h.point) {
      s.data["reason"] = "no point of multiplicity d-1 found";
      return false;
    }
    try {
      projection_witness(s, out, model, *h.point);
    } catch (const DegenerateProjection& e) {
      s.data["reason"] = e.what();
      return false;
    }
    out.outcome = Outcome::Rationalizable;
    return true;
  }

  const EngineConfig& cfg_;
};

// p/q = unit f h^2 / q^2, so sqrt(p/q) pulls back to sqrt(unit f) h / q. The
// witness is checked on the reduced radicand and the root assembled from
// the pieces; substituting into p/q directly is far more expensive.
void gate(Verdict& v, const MultiPoly& p, const MultiPoly& q, const SquareReduction& sr) {
  if (!v.witness) return;
  if (!(p * q == sr.unit * sr.f * sr.h * sr.h)) throw InternalError("square reduction does not multiply back");
  auto r = verify_witness(*v.witness, RationalFunction(sr.unit * sr.f));
  if (!r) throw InternalError("emitted witness does not rationalize the input");
  RationalFunction root = *r * substitute(sr.h, *v.witness) / substitute(q, *v.witness);
  if (root.is_zero()) throw InternalError("emitted witness maps the input to zero");
  v.root = root;
}

Verdict run_reduced(const MultiPoly& f, const EngineConfig& config) {
  SquareReduction sr = square_reduce(f);
  Verdict v = Cascade(config).run(sr.f, sr.unit);
  gate(v, f, MultiPoly::constant(f.vars(), NfElem(1)), sr);
  return v;
}

}  // namespace

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Rationalizable: return "Rationalizable";
    case Outcome::NotRationalizable: return "NotRationalizable";
    case Outcome::Inconclusive: return "Inconclusive";
  }
  return "";
}

Outcome outcome_from_string(const std::string& s) {
  for (Outcome o : {Outcome::Rationalizable, Outcome::NotRationalizable, Outcome::Inconclusive})
    if (to_string(o) == s) return o;
  throw Error("unknown outcome '" + s + "'");
}

json to_json(const AlgebraicPoint& p) {
  json c = json::array();
  for (const auto& x : p.coords) c.push_back(str(x));
  json j{{"coords", c}, {"orbit_size", p.orbit_size}};
  j["field"] = p.field ? json(p.field->describe()) : json(nullptr);
  return j;
}

json to_json(const SingularityRecord& r) {
  json j{{"point", to_json(r.point)}, {"multiplicity", r.multiplicity}, {"milnor", r.milnor}, {"class", r.label()}};
  if (r.cone) j["tangent_cone"] = to_string(*r.cone);
  if (!r.reason.empty()) j["reason"] = r.reason;
  return j;
}

json to_json(const RationalMap& m) {
  json a = json::object();
  for (size_t i = 0; i < m.source().size(); ++i) a[m.source()[i]] = m.assignments()[i].to_string();
  json j{{"assignments", a}, {"target", m.target()}};
  j["field"] = m.field() ? json(m.field()->describe()) : json(nullptr);
  return j;
}

Verdict decide(const SqrtInput& input, const EngineConfig& config) {
  Verdict v;
  Step s{"squarefree-reduction", ref::kSquares, to_string(input)};
  auto t0 = Clock::now();
  const auto& vars = input.vars;
  auto trivial = [&](const std::string& why) {
    s.data["reason"] = why;
    s.terminal = true;
    s.seconds = since(t0);
    v.outcome = Outcome::Rationalizable;
    v.steps.push_back(s);
    if (!vars.empty()) v.witness = RationalMap::identity(vars);
  };
  if (input.numerator.is_zero()) {
    v.reduced = MultiPoly(vars);
    trivial("zero radicand");
    v.root = RationalFunction(MultiPoly(vars));
  } else {
    SquareReduction sr = square_reduce(input.numerator, input.denominator);
    auto gate_reduced = [&] { gate(v, input.numerator, input.denominator, sr); };
    v.reduced = sr.f;
    s.data["reduced"] = sr.f.to_string();
    s.data["unit"] = str(sr.unit);
    s.data["degree"] = sr.f.total_degree();
    if (sr.f.is_constant()) {
      trivial("constant radicand");
    } else {
      s.seconds = since(t0);
      v.steps.push_back(s);
      Verdict sub = Cascade(config).run(sr.f, sr.unit);
      for (auto& st : sub.steps) v.steps.push_back(std::move(st));
      v.outcome = sub.outcome;
      v.witness = std::move(sub.witness);
      v.existence_by_theorem = sub.existence_by_theorem;
      v.singularities = std::move(sub.singularities);
    }
    gate_reduced();
  }
  return v;
}

Verdict decide_univariate(const MultiPoly& f, const EngineConfig& config) {
  if (effective_vars(f).size() != 1) throw Error("decide_univariate expects one effective variable");
  return run_reduced(f, config);
}

Verdict decide_bivariate(const MultiPoly& f, const EngineConfig& config) {
  if (effective_vars(f).size() != 2) throw Error("decide_bivariate expects two effective variables");
  return run_reduced(f, config);
}

}  // namespace ratroot
