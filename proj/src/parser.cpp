#include "ratroot/parser.hpp"

#include <cctype>
#include <json.hpp>

namespace ratroot {

namespace {

std::string join_expected(const std::vector<std::string>& ex) {
  std::string s;
  for (size_t i = 0; i < ex.size(); ++i) {
    if (i) s += (i + 1 == ex.size()) ? " or " : ", ";
    s += ex[i];
  }
  return s;
}

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  size_t pos;
  std::string text;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && s[j] == '.') {
        bool exponent = !out.empty() && out.back().kind == Tok::Caret;
        if (!exponent && out.size() >= 2 && out.back().kind == Tok::Minus &&
            out[out.size() - 2].kind == Tok::Caret)
          exponent = true;
        if (exponent) throw NonIntegerExponent(i);
        throw SyntaxError(j, {"operator"}, "decimal literals are not allowed");
      }
      if (j < s.size() && ident_start(s[j]))
        throw SyntaxError(j, {"'*'"}, "implicit multiplication is not allowed");
      out.push_back({Tok::Number, i, std::string(s.substr(i, j - i))});
      i = j;
      continue;
    }
    if (ident_start(c)) {
      size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back({Tok::Ident, i, std::string(s.substr(i, j - i))});
      i = j;
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '.': throw SyntaxError(i, {"number", "identifier", "'('"}, "decimal literals are not allowed");
      default: throw SyntaxError(i, {"number", "identifier", "operator"});
    }
    out.push_back({k, i, std::string(1, c)});
    ++i;
  }
  out.push_back({Tok::End, s.size(), ""});
  return out;
}

// Unreduced fraction; reduced once at the end.
struct Frac {
  MultiPoly n, d;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, std::vector<std::string> vars)
      : t_(std::move(toks)), vars_(std::move(vars)) {}

  Frac parse_all() {
    Frac f = expr();
    if (peek().kind != Tok::End) {
      if (peek().kind == Tok::Number || peek().kind == Tok::Ident || peek().kind == Tok::LParen)
        throw SyntaxError(peek().pos, {"'*'", "'+'", "'-'", "'/'", "end of input"},
                          "implicit multiplication is not allowed");
      throw SyntaxError(peek().pos, {"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
    }
    return f;
  }

 private:
  const Token& peek() const { return t_[k_]; }
  const Token& next() { return t_[k_++]; }

  MultiPoly constant(const Rational& q) const { return MultiPoly::constant(vars_, NfElem(q)); }

  Frac add(const Frac& a, const Frac& b, bool minus) const {
    MultiPoly bn = minus ? -b.n : b.n;
    if (a.d == b.d) return {a.n + bn, a.d};
    return {a.n * b.d + bn * a.d, a.d * b.d};
  }

  Frac expr() {
    bool neg = false;
    if (peek().kind == Tok::Minus || peek().kind == Tok::Plus) neg = next().kind == Tok::Minus;
    Frac acc = term();
    if (neg) acc.n = -acc.n;
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      bool minus = next().kind == Tok::Minus;
      acc = add(acc, term(), minus);
    }
    return acc;
  }

  Frac term() {
    Frac acc = factor();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      bool div = next().kind == Tok::Slash;
      Frac f = factor();
      if (div) {
        if (f.n.is_zero()) throw ZeroDenominator();
        acc = {acc.n * f.d, acc.d * f.n};
      } else {
        acc = {acc.n * f.n, acc.d * f.d};
      }
    }
    return acc;
  }

  Frac factor() {
    Frac b = base();
    if (peek().kind != Tok::Caret) return b;
    next();
    const size_t pos = peek().pos;
    bool neg = false;
    if (peek().kind == Tok::Minus) {
      next();
      neg = true;
    }
    long e = 0;
    if (peek().kind == Tok::Number) {
      Integer v(next().text);
      if (v > 1000) throw SyntaxError(pos, {"exponent <= 1000"});
      e = v.get_si();
    } else if (peek().kind == Tok::LParen) {
      Frac inner = base();
      RationalFunction r(inner.n, inner.d);
      if (!r.is_constant() || !r.num().constant_value().is_rational())
        throw NonIntegerExponent(pos);
      Rational q = r.num().constant_value().rational() / r.den().constant_value().rational();
      if (q.get_den() != 1) throw NonIntegerExponent(pos);
      if (abs(q) > 1000) throw SyntaxError(pos, {"exponent <= 1000"});
      e = q.get_num().get_si();
    } else if (peek().kind == Tok::Ident) {
      throw NonIntegerExponent(pos);
    } else {
      throw SyntaxError(peek().pos, {"integer exponent"});
    }
    if (neg) e = -e;
    if (e < 0) {
      if (b.n.is_zero()) throw ZeroDenominator();
      return {b.d.pow(static_cast<int>(-e)), b.n.pow(static_cast<int>(-e))};
    }
    return {b.n.pow(static_cast<int>(e)), b.d.pow(static_cast<int>(e))};
  }

  Frac base() {
    const Token& tk = peek();
    switch (tk.kind) {
      case Tok::Number: {
        next();
        return {constant(Rational(Integer(tk.text))), constant(Rational(1))};
      }
      case Tok::Ident: {
        next();
        int i = var_index(vars_, tk.text);
        if (i < 0) throw UndefinedVariable(tk.text);
        return {MultiPoly::variable(vars_, static_cast<size_t>(i)), constant(Rational(1))};
      }
      case Tok::LParen: {
        next();
        Frac f = expr();
        if (peek().kind != Tok::RParen) throw SyntaxError(peek().pos, {"')'"});
        next();
        return f;
      }
      default:
        throw SyntaxError(tk.pos, {"number", "identifier", "'('"});
    }
  }

  std::vector<Token> t_;
  std::vector<std::string> vars_;
  size_t k_ = 0;
};

}  // namespace

SyntaxError::SyntaxError(size_t offset, std::vector<std::string> expected, const std::string& detail)
    : Error("syntax error at offset " + std::to_string(offset) + ": expected " +
            join_expected(expected) + (detail.empty() ? "" : " (" + detail + ")")),
      offset_(offset),
      expected_(std::move(expected)) {}

AlphabetParseError::AlphabetParseError(std::vector<std::pair<size_t, std::string>> failures)
    : Error([&] {
        std::string s = "alphabet has invalid entries:";
        for (const auto& [i, m] : failures) s += "\n  root " + std::to_string(i) + ": " + m;
        return s;
      }()),
      failures_(std::move(failures)) {}

SqrtInput parse_radicand(std::string_view text, const std::optional<std::vector<std::string>>& vars) {
  std::vector<Token> toks = tokenize(text);
  std::vector<std::string> vs;
  if (vars) {
    vs = *vars;
  } else {
    for (const auto& t : toks)
      if (t.kind == Tok::Ident && var_index(vs, t.text) < 0) vs.push_back(t.text);
  }
  Parser p(std::move(toks), vs);
  Frac f = p.parse_all();
  if (f.d.is_zero()) throw ZeroDenominator();
  RationalFunction r(f.n, f.d);
  return SqrtInput{r.num(), r.den(), vs};
}

MultiPoly parse_poly(std::string_view text, const std::vector<std::string>& vars) {
  SqrtInput in = parse_radicand(text, vars);
  if (!in.denominator.is_constant()) throw Error("expected a polynomial: " + std::string(text));
  return in.numerator;
}

std::string to_string(const SqrtInput& in) {
  std::string n = in.numerator.to_string();
  if (in.denominator.is_constant() && in.denominator.constant_value().is_one()) return n;
  return "(" + n + ")/(" + in.denominator.to_string() + ")";
}

std::vector<AlphabetEntry> parse_alphabet(const std::string& document) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("alphabet is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("alphabet must be a JSON object");
  std::optional<std::vector<std::string>> declared;
  if (doc.contains("variables")) {
    if (!doc["variables"].is_array()) throw SchemaError("\"variables\" must be a list of strings");
    std::vector<std::string> vs;
    for (const auto& v : doc["variables"]) {
      if (!v.is_string()) throw SchemaError("\"variables\" must be a list of strings");
      vs.push_back(v.get<std::string>());
    }
    declared = vs;
  }
  if (!doc.contains("roots") || !doc["roots"].is_array())
    throw SchemaError("alphabet needs a \"roots\" list");
  const json& roots = doc["roots"];
  if (roots.empty()) throw SchemaError("alphabet must be non-empty");

  std::vector<AlphabetEntry> out;
  std::vector<std::pair<size_t, std::string>> failures;
  for (size_t i = 0; i < roots.size(); ++i) {
    const json& r = roots[i];
    if (!r.is_object() || !r.contains("radicand") || !r["radicand"].is_string())
      throw SchemaError("root " + std::to_string(i) + " needs a string \"radicand\"");
    std::string label;
    if (r.contains("label")) {
      if (!r["label"].is_string()) throw SchemaError("root " + std::to_string(i) + ": \"label\" must be a string");
      label = r["label"].get<std::string>();
    }
    try {
      out.push_back({parse_radicand(r["radicand"].get<std::string>(), declared), label});
    } catch (const Error& e) {
      failures.emplace_back(i, e.what());
    }
  }
  if (!failures.empty()) throw AlphabetParseError(std::move(failures));

  std::vector<std::string> universe;
  if (declared) {
    universe = *declared;
  } else {
    for (const auto& e : out)
      for (const auto& v : e.input.vars)
        if (var_index(universe, v) < 0) universe.push_back(v);
  }
  for (auto& e : out) {
    e.input.numerator = e.input.numerator.with_vars(universe);
    e.input.denominator = e.input.denominator.with_vars(universe);
    e.input.vars = universe;
  }
  return out;
}

}  // namespace ratroot
