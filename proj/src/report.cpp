#include "ratroot/report.hpp"

#include <chrono>
#include <sstream>

#include "ratroot/witness.hpp"

namespace ratroot {

namespace {

using nlohmann::json;

const char* const kRefSubsets =
    "Proposition (alphabets): \"If the alphabet $\\{ \\sqrt{f_1},...,\\sqrt{f_n}\\}$ is rationalizable then, for every "
    "non-empty subset $J\\subseteq \\{1,...,n\\}$, the square root $\\sqrt{\\prod_{j\\in J} f_j}$ is rationalizable\"";
const char* const kRefSequential =
    "Remark (sequential strategy): \"plug the corresponding substitution into the second square root and try to "
    "rationalize the resulting square root\"; \"rationalizes both square roots simultaneously\"";
const char* const kRefShared =
    "Proposition (homogeneous reduction): \"if $d$ is even, then $\\sqrt{f}$ is rationalizable if and only if "
    "$\\sqrt{F}$ is\"";
const char* const kRefSimple =
    "Theorem (two variables): \"$\\overline{S}$ has at most rational simple singularities\"";

json step_json(const Step& s) {
  return json{{"rule", s.rule}, {"paper_ref", s.paper_ref}, {"input", s.input}, {"data", s.data},
              {"terminal", s.terminal}};
}

json steps_json(const std::vector<Step>& steps) {
  json a = json::array();
  for (const auto& s : steps) a.push_back(step_json(s));
  return a;
}

json step_times(const std::vector<Step>& steps) {
  json a = json::array();
  for (const auto& s : steps) a.push_back(json{{"rule", s.rule}, {"seconds", s.seconds}});
  return a;
}

json records_json(const std::vector<SingularityRecord>& recs) {
  json a = json::array();
  for (const auto& r : recs) a.push_back(to_json(r));
  return a;
}

json subset_json(const std::vector<size_t>& s) {
  json a = json::array();
  for (size_t i : s) a.push_back(i + 1);
  return a;
}

json witness_json(const RationalMap& m, const std::vector<RationalFunction>& roots) {
  json w = to_json(m);
  json r = json::array();
  for (const auto& h : roots) r.push_back(h.to_string());
  w["roots"] = r;
  return w;
}

void require(std::vector<std::string>& out, const json& j, const char* key, json::value_t type) {
  if (!j.contains(key)) {
    out.push_back(std::string("missing member '") + key + "'");
    return;
  }
  json::value_t t = j.at(key).type();
  bool ok = t == type || (type == json::value_t::number_float && j.at(key).is_number()) ||
            (type == json::value_t::number_integer && j.at(key).is_number_integer());
  if (!ok) out.push_back(std::string("member '") + key + "' has the wrong type");
}

}  // namespace

json config_json(const AlphabetOptions& opt) {
  return json{{"max_height", opt.engine.max_height},
              {"scan_budget", opt.engine.scan_budget},
              {"timeout", opt.engine.timeout},
              {"threads", opt.engine.threads},
              {"max_subset_size", opt.engine.max_subset_size},
              {"ordering_budget", opt.ordering_budget},
              {"seeds", opt.seeds.size()}};
}

json report_json(const SqrtInput& input, const Verdict& v, const AlphabetOptions& opt, double seconds) {
  json j;
  j["version"] = kToolVersion;
  j["kind"] = "root";
  j["input"] = json{{"expression", to_string(input)}, {"variables", input.vars}};
  j["outcome"] = to_string(v.outcome);
  j["reduced"] = v.reduced.to_string();
  j["existence_by_theorem"] = v.existence_by_theorem;
  if (v.witness) {
    std::vector<RationalFunction> roots;
    if (v.root) roots.push_back(*v.root);
    j["witness"] = witness_json(*v.witness, roots);
  }
  j["steps"] = steps_json(v.steps);
  if (!v.singularities.empty()) j["singularities"] = records_json(v.singularities);
  j["timings"] = json{{"total", seconds}, {"steps", step_times(v.steps)}};
  j["config"] = config_json(opt);
  return j;
}

json report_json(const std::vector<AlphabetEntry>& roots, const AlphabetVerdict& v, const AlphabetOptions& opt,
                 double seconds) {
  json j;
  j["version"] = kToolVersion;
  j["kind"] = "alphabet";
  json in = json::array();
  for (const auto& e : roots) {
    json r{{"radicand", to_string(e.input)}};
    if (!e.label.empty()) r["label"] = e.label;
    in.push_back(r);
  }
  j["input"] = json{{"variables", v.vars}, {"roots", in}};
  j["outcome"] = to_string(v.outcome);
  if (v.witness) j["witness"] = witness_json(*v.witness, v.roots);

  json steps = json::array();
  if (v.dehomogenized_by) {
    steps.push_back(json{{"rule", "shared-dehomogenization"},
                         {"paper_ref", kRefShared},
                         {"input", ""},
                         {"data", json{{"variable", *v.dehomogenized_by}}},
                         {"terminal", false}});
  }
  json audit = json::array();
  for (const auto& a : v.audit)
    audit.push_back(json{{"subset", subset_json(a.subset)},
                         {"degree", a.degree},
                         {"outcome", to_string(a.outcome)},
                         {"rule", a.rule}});
  json sub{{"subsets", audit}};
  if (v.certificate) {
    sub["certificate"] = json{{"subset", subset_json(v.certificate->subset)},
                              {"product", v.certificate->product.to_string()},
                              {"steps", steps_json(v.certificate->verdict.steps)}};
    if (!v.certificate->verdict.singularities.empty())
      sub["certificate"]["singularities"] = records_json(v.certificate->verdict.singularities);
  }
  steps.push_back(json{{"rule", "subset-products"},
                       {"paper_ref", kRefSubsets},
                       {"input", ""},
                       {"data", sub},
                       {"terminal", v.outcome == Outcome::NotRationalizable}});
  if (v.outcome != Outcome::NotRationalizable)
    steps.push_back(json{{"rule", "sequential-rationalization"},
                         {"paper_ref", kRefSequential},
                         {"input", ""},
                         {"data", json{{"trace", v.trace}}},
                         {"terminal", v.outcome == Outcome::Rationalizable}});
  j["steps"] = steps;
  if (v.certificate && !v.certificate->verdict.singularities.empty())
    j["singularities"] = records_json(v.certificate->verdict.singularities);
  j["trace"] = v.trace;
  j["warnings"] = v.warnings;
  j["timings"] = json{{"total", seconds}};
  j["config"] = config_json(opt);
  return j;
}

json singularities_json(const SqrtInput& input, const AlphabetOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  SquareReduction sr = square_reduce(input.numerator, input.denominator);
  MultiPoly f = restrict_to_effective(sr.f);
  if (f.nvars() != 2) throw NotBivariate(f.nvars());
  GeometricModel model = build_model(f, sr.unit);
  SimplicityReport rep = all_simple(model);
  json j;
  j["version"] = kToolVersion;
  j["kind"] = "singularities";
  j["input"] = json{{"expression", to_string(input)}, {"variables", input.vars}};
  j["outcome"] = rep.all_simple ? "AllSimple" : "NonSimple";
  j["branch_curve"] = model.B->to_string();
  j["degree"] = rep.degree;
  j["total_milnor"] = rep.total_milnor;
  j["steps"] = json::array({json{{"rule", "branch-curve-singularities"},
                                 {"paper_ref", kRefSimple},
                                 {"input", f.to_string()},
                                 {"data", json{{"all_simple", rep.all_simple}}},
                                 {"terminal", true}}});
  j["singularities"] = records_json(rep.records);
  j["timings"] = json{{"total", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
  j["config"] = config_json(opt);
  return j;
}

std::vector<std::string> validate_report(const json& r) {
  std::vector<std::string> out;
  if (!r.is_object()) return {"report is not an object"};
  require(out, r, "version", json::value_t::string);
  require(out, r, "kind", json::value_t::string);
  require(out, r, "input", json::value_t::object);
  require(out, r, "outcome", json::value_t::string);
  require(out, r, "steps", json::value_t::array);
  require(out, r, "timings", json::value_t::object);
  require(out, r, "config", json::value_t::object);
  if (r.contains("steps") && r["steps"].is_array())
    for (const auto& s : r["steps"]) {
      if (!s.is_object()) {
        out.push_back("step is not an object");
        continue;
      }
      require(out, s, "rule", json::value_t::string);
      require(out, s, "paper_ref", json::value_t::string);
      require(out, s, "data", json::value_t::object);
    }
  if (r.contains("witness")) require(out, r["witness"], "assignments", json::value_t::object);
  if (r.contains("singularities") && !r["singularities"].is_array()) out.push_back("singularities is not an array");
  if (r.contains("kind") && r["kind"] != "singularities" && r.contains("outcome") && r["outcome"].is_string()) {
    try {
      outcome_from_string(r["outcome"]);
    } catch (const Error&) {
      out.push_back("unknown outcome");
    }
  }
  return out;
}

json without_timings(const json& r) {
  if (r.is_object()) {
    json o = json::object();
    for (auto it = r.begin(); it != r.end(); ++it)
      if (it.key() != "timings") o[it.key()] = without_timings(it.value());
    return o;
  }
  if (r.is_array()) {
    json a = json::array();
    for (const auto& x : r) a.push_back(without_timings(x));
    return a;
  }
  return r;
}

std::string render_text(const json& r, bool witness, bool trace) {
  std::ostringstream os;
  os << "outcome: " << r.value("outcome", std::string("?")) << "\n";
  const std::string kind = r.value("kind", std::string());
  if (kind == "singularities") {
    os << "branch curve: " << r["branch_curve"].get<std::string>() << " (degree " << r["degree"] << ")\n";
    if (r["singularities"].empty()) os << "no singular points\n";
    for (const auto& s : r["singularities"]) {
      os << "  " << s["class"].get<std::string>() << "  m=" << s["multiplicity"] << "  mu=" << s["milnor"]
         << "  orbit=" << s["point"]["orbit_size"] << "  point=(";
      bool first = true;
      for (const auto& c : s["point"]["coords"]) {
        os << (first ? "" : " : ") << c.get<std::string>();
        first = false;
      }
      os << ")";
      if (!s["point"]["field"].is_null()) os << " over " << s["point"]["field"].get<std::string>();
      if (s.contains("reason")) os << "  [" << s["reason"].get<std::string>() << "]";
      os << "\n";
    }
    return os.str();
  }
  if (!r["steps"].empty()) {
    const auto& last = r["steps"].back();
    os << "decided by: " << last["rule"].get<std::string>() << "\n";
  }
  if (r.value("existence_by_theorem", false)) os << "witness: none (existence by theorem)\n";
  if (kind == "alphabet") {
    for (const auto& s : r["steps"])
      if (s["rule"] == "subset-products" && s["data"].contains("certificate")) {
        const auto& c = s["data"]["certificate"];
        os << "certificate: subset " << c["subset"].dump() << ", product " << c["product"].get<std::string>() << "\n";
      }
    for (const auto& w : r["warnings"]) os << "warning: " << w.get<std::string>() << "\n";
  }
  if (witness && r.contains("witness")) {
    os << "witness:\n";
    for (auto it = r["witness"]["assignments"].begin(); it != r["witness"]["assignments"].end(); ++it)
      os << "  " << it.key() << " -> " << it.value().get<std::string>() << "\n";
    if (!r["witness"]["field"].is_null()) os << "  over " << r["witness"]["field"].get<std::string>() << "\n";
    for (const auto& h : r["witness"]["roots"]) os << "  sqrt -> " << h.get<std::string>() << "\n";
  }
  if (trace) {
    os << "steps:\n";
    for (const auto& s : r["steps"]) {
      os << "  [" << s["rule"].get<std::string>() << "]" << (s.value("terminal", false) ? " terminal" : "") << "\n";
      os << "    ref: " << s["paper_ref"].get<std::string>() << "\n";
      os << "    data: " << s["data"].dump() << "\n";
    }
    if (r.contains("trace"))
      for (const auto& t : r["trace"]) os << "  trace: " << t.get<std::string>() << "\n";
  }
  return os.str();
}

RationalMap parse_map(const json& spec, const std::vector<std::string>& vars) {
  if (!spec.is_object()) throw SchemaError("a substitution must be an object of variable -> expression");
  std::vector<RationalFunction> assign;
  for (size_t i = 0; i < vars.size(); ++i) {
    if (spec.contains(vars[i])) {
      SqrtInput e = parse_radicand(spec[vars[i]].get<std::string>(), vars);
      assign.emplace_back(e.numerator, e.denominator);
    } else {
      assign.emplace_back(MultiPoly::variable(vars, i));
    }
  }
  for (auto it = spec.begin(); it != spec.end(); ++it)
    if (var_index(vars, it.key()) < 0) throw UndefinedVariable(it.key());
  return RationalMap(vars, vars, assign);
}

CorpusResult run_corpus(const json& corpus, const AlphabetOptions& opt) {
  if (!corpus.is_array() || corpus.empty()) throw SchemaError("corpus must be a non-empty list");
  CorpusResult res;
  for (const auto& e : corpus) {
    if (!e.is_object() || !e.contains("kind") || !e.contains("input") || !e.contains("expected"))
      throw SchemaError("corpus entry needs kind, input and expected");
    const std::string kind = e["kind"], name = e.value("name", std::string("?"));
    Outcome expected = outcome_from_string(e["expected"]);
    auto t0 = std::chrono::steady_clock::now();
    json report;
    if (kind == "root") {
      std::optional<std::vector<std::string>> vars;
      if (e.contains("variables")) vars = e["variables"].get<std::vector<std::string>>();
      SqrtInput in = parse_radicand(e["input"].get<std::string>(), vars);
      Verdict v = decide(in, opt.engine);
      report = report_json(in, v, opt,
                           std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    } else if (kind == "alphabet") {
      auto roots = parse_alphabet(e["input"].dump());
      AlphabetOptions o = opt;
      if (e.contains("seeds"))
        for (const auto& s : e["seeds"]) o.seeds.push_back(parse_map(s, roots.front().input.vars));
      AlphabetVerdict v = decide_alphabet(roots, o);
      report = report_json(roots, v, o, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    } else {
      throw SchemaError("unknown corpus kind '" + kind + "'");
    }
    const std::string got = report["outcome"];
    const bool ok = got == to_string(expected);
    if (!ok) ++res.mismatches;
    std::ostringstream line;
    line << (ok ? "PASS " : "FAIL ") << name << ": expected " << to_string(expected) << ", got " << got;
    res.lines.push_back(line.str());
    res.reports.push_back(json{{"name", name}, {"expected", to_string(expected)}, {"report", report}});
  }
  return res;
}

}  // namespace ratroot
