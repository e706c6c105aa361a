#include "ratroot/alphabet.hpp"

#include <atomic>
#include <thread>

#include "ratroot/witness.hpp"

namespace ratroot {

namespace {

std::string subset_string(const std::vector<size_t>& s) {
  std::string out = "{";
  for (size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i] + 1);
  return out + "}";
}

std::string sqrt_string(const RationalFunction& r) { return "sqrt(" + r.to_string() + ")"; }

class Search {
 public:
  Search(const AlphabetOptions& opt, std::vector<std::string>* trace, std::vector<std::string> vars)
      : opt_(opt), trace_(trace), vars_(std::move(vars)) {}

  std::optional<RationalMap> run(const std::vector<RationalFunction>& pending, const std::optional<RationalMap>& acc,
                                 const std::string& path) {
    if (pending.empty()) {
      ++orderings_;
      return acc;
    }
    if (orderings_ >= opt_.ordering_budget) return std::nullopt;
    std::vector<Verdict> verdicts;
    for (const auto& r : pending) {
      verdicts.push_back(decide(SqrtInput{r.num(), r.den(), vars_}, opt_.engine));
      if (verdicts.back().outcome == Outcome::NotRationalizable) {
        ++orderings_;
        note(path + "dead end: " + sqrt_string(r) + " is not rationalizable (" + verdicts.back().steps.back().rule +
             ")");
        return std::nullopt;
      }
    }
    for (size_t i = 0; i < pending.size(); ++i) {
      std::vector<std::pair<RationalMap, std::string>> candidates;
      for (size_t k = 0; k < opt_.seeds.size(); ++k) {
        const RationalMap& s = opt_.seeds[k];
        if (s.source() == vars_ && s.target() == vars_ && verify_witness(s, pending[i]))
          candidates.emplace_back(s, "seed " + std::to_string(k + 1));
      }
      if (verdicts[i].witness) candidates.emplace_back(*verdicts[i].witness, "engine witness");
      for (const auto& [phi, origin] : candidates) {
        if (orderings_ >= opt_.ordering_budget) return std::nullopt;
        std::string here = path + sqrt_string(pending[i]) + " via " + origin + " -> ";
        std::vector<RationalFunction> rest;
        try {
          for (size_t j = 0; j < pending.size(); ++j) {
            if (j == i) continue;
            RationalFunction g = substitute(pending[j], phi);
            SquareReduction sr = square_reduce(g.num(), g.den());
            if (!sr.f.is_constant()) rest.emplace_back(sr.unit * sr.f);
          }
          RationalMap next = acc ? compose(*acc, phi) : phi;
          if (auto done = run(rest, next, here)) return done;
        } catch (const InternalError&) {
          throw;
        } catch (const Error& e) {
          ++orderings_;
          note(here + "abandoned: " + e.what());
        }
      }
    }
    return std::nullopt;
  }

 private:
  void note(const std::string& s) {
    if (trace_) trace_->push_back(s);
  }

  const AlphabetOptions& opt_;
  std::vector<std::string>* trace_;
  std::vector<std::string> vars_;
  size_t orderings_ = 0;
};

RationalFunction dehomogenize_fraction(const RationalFunction& r, const std::vector<std::string>& rest) {
  size_t last = r.vars().size() - 1;
  return RationalFunction(r.num().substitute_value(last, NfElem(1)).with_vars(rest),
                          r.den().substitute_value(last, NfElem(1)).with_vars(rest));
}

/// X_i -> phi_i * X_n, X_n -> X_n.
RationalMap lift_dehomogenized(const RationalMap& phi, const std::vector<std::string>& vars) {
  MultiPoly xn = MultiPoly::variable(vars, vars.size() - 1);
  std::vector<RationalFunction> assign;
  for (size_t i = 0; i + 1 < vars.size(); ++i) {
    const RationalFunction* a = phi.assignment(vars[i]);
    assign.push_back(RationalFunction(a->num().with_vars(vars), a->den().with_vars(vars)) * RationalFunction(xn));
  }
  assign.emplace_back(xn);
  return RationalMap(vars, vars, assign);
}

}  // namespace

std::vector<SubsetProduct> subset_products(const std::vector<MultiPoly>& roots, size_t cap) {
  const size_t n = roots.size();
  if (n == 0) throw Error("empty alphabet");
  if (n > cap) throw TooManyRoots(n, cap);
  std::vector<SubsetProduct> out;
  for (size_t k = 1; k <= n; ++k) {
    // k-subsets in lexicographic order
    std::vector<size_t> idx(k);
    for (size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      MultiPoly p = roots[idx[0]];
      for (size_t i = 1; i < k; ++i) p = p * roots[idx[i]];
      out.push_back({idx, squarefree_part(p)});
      size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

std::optional<RationalMap> sequential_rationalize(const std::vector<RationalFunction>& roots,
                                                  const AlphabetOptions& opt, std::vector<std::string>* trace) {
  if (roots.empty()) return std::nullopt;
  Search search(opt, trace, roots.front().vars());
  auto map = search.run(roots, std::nullopt, "");
  if (!map) return std::nullopt;
  for (const auto& r : roots)
    if (!verify_witness(*map, r)) throw InternalError("sequential witness does not rationalize " + r.to_string());
  return map;
}

AlphabetVerdict decide_alphabet(const std::vector<AlphabetEntry>& entries, const AlphabetOptions& opt) {
  if (entries.empty()) throw Error("empty alphabet");
  const size_t cap = opt.engine.max_subset_size;
  if (entries.size() > cap) throw TooManyRoots(entries.size(), cap);
  AlphabetVerdict av;
  av.vars = entries.front().input.vars;
  std::vector<RationalFunction> roots;
  for (const auto& e : entries) roots.emplace_back(e.input.numerator, e.input.denominator);

  for (size_t i = 0; i < roots.size(); ++i) {
    MultiPoly f = square_reduce(roots[i].num(), roots[i].den()).f;
    if (f.total_degree() > 8)
      av.warnings.push_back("root " + std::to_string(i + 1) + " has degree " + std::to_string(f.total_degree()) +
                            " after removing square factors; if it is the image of an earlier substitution, "
                            "analyze the original roots first");
  }

  // shared dehomogenization when every root is homogeneous of even degree
  std::vector<std::string> vars = av.vars;
  std::vector<RationalFunction> work = roots;
  bool shared = vars.size() >= 2;
  for (const auto& r : roots) {
    auto deg = is_homogeneous(r.num() * r.den());
    shared = shared && deg && *deg % 2 == 0;
  }
  if (shared) {
    av.dehomogenized_by = vars.back();
    vars.pop_back();
    for (auto& r : work) r = dehomogenize_fraction(r, vars);
    av.trace.push_back("all roots homogeneous of even degree: set " + *av.dehomogenized_by + " = 1");
  }

  std::vector<MultiPoly> radicands;
  for (const auto& r : work) radicands.push_back(r.num() * r.den());
  std::vector<SubsetProduct> products = subset_products(radicands, cap);

  // phase 1: the first non-rationalizable subset product, in enumeration order
  std::vector<std::optional<Verdict>> results(products.size());
  std::atomic<size_t> next{0};
  std::atomic<size_t> first_no{products.size()};
  auto worker = [&] {
    for (size_t i = next++; i < products.size(); i = next++) {
      if (i > first_no.load()) continue;
      const MultiPoly& p = products[i].product;
      results[i] = decide(SqrtInput{p, MultiPoly::constant(vars, NfElem(1)), vars}, opt.engine);
      if (results[i]->outcome == Outcome::NotRationalizable) {
        size_t cur = first_no.load();
        while (i < cur && !first_no.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  const int threads = std::max(1, opt.engine.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<std::string> open;
  for (size_t i = 0; i < products.size() && i <= first_no.load(); ++i) {
    const Verdict& v = *results[i];
    av.audit.push_back({products[i].subset, products[i].product.total_degree(), v.outcome, v.steps.back().rule});
    if (v.outcome == Outcome::Inconclusive) {
      std::string why;
      for (const auto& st : v.steps) {
        if (st.rule == "inconclusive") continue;
        for (const char* key : {"reason", "error"})
          if (st.data.contains(key)) why += (why.empty() ? "" : "; ") + st.rule + ": " + st.data[key].get<std::string>();
      }
      open.push_back("product " + subset_string(products[i].subset) + " of degree " +
                     std::to_string(products[i].product.total_degree()) + " is inconclusive (" + why + ")");
    }
  }
  if (first_no.load() < products.size()) {
    size_t i = first_no.load();
    av.outcome = Outcome::NotRationalizable;
    av.certificate = SubsetCertificate{products[i].subset, products[i].product, *results[i]};
    av.trace.push_back("product " + subset_string(products[i].subset) + " is not rationalizable");
    return av;
  }
  for (auto& s : open) av.trace.push_back(std::move(s));

  // phase 2: rationalize one root after another
  std::vector<std::string> search_trace;
  std::optional<RationalMap> map = sequential_rationalize(work, opt, &search_trace);
  for (auto& s : search_trace) av.trace.push_back(std::move(s));
  if (!map) {
    av.trace.push_back("sequential search found no simultaneous substitution");
    av.outcome = Outcome::Inconclusive;
    return av;
  }
  if (shared) map = lift_dehomogenized(*map, av.vars);
  for (const auto& r : roots) {
    auto h = verify_witness(*map, r);
    if (!h) throw InternalError("alphabet witness does not rationalize " + r.to_string());
    av.roots.push_back(*h);
  }
  av.witness = map;
  av.outcome = Outcome::Rationalizable;
  av.trace.push_back("simultaneous substitution found and verified");
  return av;
}

}  // namespace ratroot
