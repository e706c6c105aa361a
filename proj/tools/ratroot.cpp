#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ratroot/report.hpp"

using namespace ratroot;
using nlohmann::json;

namespace {

struct Flags {
  std::string vars;
  std::string json_path;
  bool witness = false;
  bool trace = false;
  AlphabetOptions opt;
};

std::optional<std::vector<std::string>> split_vars(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string v; std::getline(ss, v, ',');)
    if (!v.empty()) out.push_back(v);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool hit_resource_limit(const json& report) {
  if (report["outcome"] != "Inconclusive") return false;
  return report.dump().find("resource limit") != std::string::npos;
}

int emit(const json& report, const Flags& f) {
  if (!f.json_path.empty()) {
    if (f.json_path == "-") {
      std::cout << report.dump(2) << "\n";
    } else {
      std::ofstream(f.json_path) << report.dump(2) << "\n";
    }
  }
  if (f.json_path != "-") std::cout << render_text(report, f.witness, f.trace);
  return hit_resource_limit(report) ? 3 : 0;
}

/// "X=X^4+1;Y=Y-1" -> {"X": "X^4+1", "Y": "Y-1"}
json seed_spec(const std::string& s) {
  json j = json::object();
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ';');) {
    auto eq = part.find('=');
    if (eq == std::string::npos) throw SchemaError("seed must look like VAR=EXPR;...");
    std::string var = part.substr(0, eq);
    var.erase(0, var.find_first_not_of(' '));
    var.erase(var.find_last_not_of(' ') + 1);
    j[var] = part.substr(eq + 1);
  }
  return j;
}

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--vars", f.vars, "variable order, comma separated");
  app->add_option("--json", f.json_path, "write the JSON report to PATH ('-' for standard output)");
  app->add_flag("--witness", f.witness, "print the witness substitution");
  app->add_flag("--trace", f.trace, "print every rule application");
  app->add_option("--max-height", f.opt.engine.max_height, "height bound of the rational point scan");
  app->add_option("--max-subset-size", f.opt.engine.max_subset_size, "largest alphabet accepted");
  app->add_option("--timeout", f.opt.engine.timeout, "seconds per rule");
  app->add_option("--threads", f.opt.engine.threads, "worker threads");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decide whether square roots of rational functions can be rationalized"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Flags f;

  std::string expr;
  auto* analyze = app.add_subcommand("analyze", "decide a single square root");
  analyze->add_option("expr", expr, "radicand p/q")->required();
  add_common(analyze, f);

  std::string path;
  std::vector<std::string> root_exprs, seeds;
  auto* alphabet = app.add_subcommand("alphabet", "decide a set of square roots");
  alphabet->add_option("path", path, "alphabet JSON file");
  alphabet->add_option("--root", root_exprs, "a radicand (repeatable) instead of a file");
  alphabet->add_option("--seed", seeds, "substitution tried first, e.g. 'X=X^4+1' (repeatable)");
  add_common(alphabet, f);

  auto* sing = app.add_subcommand("singularities", "singular points of the branch curve of a bivariate radicand");
  sing->add_option("expr", expr, "radicand p/q")->required();
  add_common(sing, f);

  std::string corpus_path = std::string(RATROOT_DATA_DIR) + "/corpus.json";
  auto* corpus = app.add_subcommand("corpus", "run the bundled examples and compare outcomes");
  corpus->add_option("path", corpus_path, "corpus file");
  add_common(corpus, f);

  CLI11_PARSE(app, argc, argv);

  try {
    auto t0 = std::chrono::steady_clock::now();
    if (*analyze) {
      SqrtInput in = parse_radicand(expr, split_vars(f.vars));
      Verdict v = decide(in, f.opt.engine);
      return emit(report_json(in, v, f.opt, since(t0)), f);
    }
    if (*alphabet) {
      std::vector<AlphabetEntry> roots;
      if (!root_exprs.empty()) {
        json doc{{"roots", json::array()}};
        if (auto vs = split_vars(f.vars)) doc["variables"] = *vs;
        for (const auto& r : root_exprs) doc["roots"].push_back(json{{"radicand", r}});
        roots = parse_alphabet(doc.dump());
      } else if (!path.empty()) {
        roots = parse_alphabet(read_file(path));
      } else {
        std::cerr << "error: give an alphabet file or --root expressions\n";
        return 2;
      }
      for (const auto& s : seeds) f.opt.seeds.push_back(parse_map(seed_spec(s), roots.front().input.vars));
      AlphabetVerdict v = decide_alphabet(roots, f.opt);
      return emit(report_json(roots, v, f.opt, since(t0)), f);
    }
    if (*sing) {
      SqrtInput in = parse_radicand(expr, split_vars(f.vars));
      return emit(singularities_json(in, f.opt), f);
    }
    if (*corpus) {
      json doc;
      try {
        doc = json::parse(read_file(corpus_path));
      } catch (const json::exception& e) {
        throw SchemaError(std::string("corpus is not valid JSON: ") + e.what());
      }
      CorpusResult res = run_corpus(doc, f.opt);
      for (const auto& l : res.lines) std::cout << l << "\n";
      std::cout << (res.reports.size() - res.mismatches) << "/" << res.reports.size() << " as expected\n";
      if (!f.json_path.empty()) std::ofstream(f.json_path) << res.reports.dump(2) << "\n";
      return res.mismatches ? 5 : 0;
    }
  } catch (const SyntaxError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ZeroDenominator& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const NonIntegerExponent& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const UndefinedVariable& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const SchemaError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const AlphabetParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    for (const auto& [i, msg] : e.failures()) std::cerr << "  root " << i + 1 << ": " << msg << "\n";
    return 2;
  } catch (const ZeroRadicand& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const TooManyRoots& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const ResourceExhausted& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const NotBivariate& e) {
    std::cerr << "not bivariate: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
