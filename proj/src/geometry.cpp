#include "ratroot/geometry.hpp"

#include <numeric>

#include "ratroot/deadline.hpp"
#include "ratroot/elimination.hpp"
#include "ratroot/factor.hpp"

namespace ratroot {

namespace {

const std::vector<std::string> UV{"u", "v"};

QPoly as_q(const UniPoly<NfElem>& p) {
  auto q = to_q(p);
  if (!q) throw InternalError("expected a rational polynomial");
  return *q;
}

// b(x, y) over Q as a polynomial in y with coefficients in Q[x].
QBiPoly to_bipoly(const MultiPoly& b) {
  QBiPoly out;
  for (const auto& c : b.coeffs_in(1)) out.push_back(as_q(c.to_univariate(0)));
  return out;
}

FieldPtr field_of(const std::vector<NfElem>& v) {
  FieldPtr f;
  for (const auto& e : v) f = common_field(f, e.field());
  return f;
}

// Roots of h over `base`, one per irreducible factor, with the degree of
// that factor.
std::vector<std::pair<NfElem, int>> grouped_roots(const UniPoly<NfElem>& h, const FieldPtr& base,
                                                  const std::string& name) {
  std::vector<std::pair<NfElem, int>> out;
  if (h.degree() < 1) return out;
  auto fac = factor_over(h, base);
  for (const auto& [psi, mult] : fac.factors) {
    (void)mult;
    if (psi.degree() == 1) {
      out.emplace_back(-psi.coeff(0) / psi.coeff(1), 1);
    } else {
      FieldPtr k = NumberField::make(base, psi, name);
      out.emplace_back(NfElem::generator(k), psi.degree());
    }
  }
  return out;
}

// g in an affine chart with `point` moved to the origin, variables (u, v, ...).
MultiPoly local_equation(const MultiPoly& g, const std::vector<NfElem>& point) {
  std::vector<std::string> names;
  if (g.nvars() == 2) {
    names = UV;
  } else {
    for (size_t i = 0; i < g.nvars(); ++i) names.push_back("t" + std::to_string(i));
  }
  std::vector<MultiPoly> images;
  for (size_t i = 0; i < g.nvars(); ++i)
    images.push_back(MultiPoly::variable(names, i) + MultiPoly::constant(names, point[i]));
  return g.compose(images);
}

// y divides every term: divide it out.
MultiPoly drop_y(const MultiPoly& p) {
  MultiPoly r(p.vars());
  for (const auto& [e, c] : p.terms()) {
    Exponent f = e;
    f[1] -= 1;
    r.add_term(f, c);
  }
  return r;
}

void gather_scale(const NfElem& c, Integer& num, Integer& den) {
  if (!c.is_rational()) {
    for (const auto& d : c.coeffs()) gather_scale(d, num, den);
    return;
  }
  mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.rational().get_num_mpz_t());
  mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.rational().get_den_mpz_t());
}

// Multiple whose rational coordinates are coprime integers; monic first over a number field.
MultiPoly primitive_part(const MultiPoly& p) {
  if (p.is_zero()) return p;
  MultiPoly q = p.is_rational() ? p : p.monic();
  Integer num = 0, den = 1;
  for (const auto& [e, c] : q.terms()) gather_scale(c, num, den);
  Rational s(den, num);
  s.canonicalize();
  return NfElem(s) * q;
}

// Terms of total degree <= n.
MultiPoly truncate(const MultiPoly& p, int n) {
  MultiPoly r(p.vars());
  for (const auto& [e, c] : p.terms())
    if (e[0] + e[1] <= n) r.add_term(e, c);
  return r;
}

int order_at_zero(const UniPoly<NfElem>& p) {
  int k = 0;
  while (is_zero_value(p.coeff(k))) ++k;
  return k;
}

// Rank of a dense matrix, destroying it.
size_t rank(std::vector<std::vector<NfElem>>& rows, size_t ncols) {
  size_t r = 0;
  for (size_t c = 0; c < ncols && r < rows.size(); ++c) {
    check_deadline();
    size_t piv = r;
    while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    NfElem inv = rows[r][c].inverse();
    for (size_t k = c; k < ncols; ++k) rows[r][k] *= inv;
    for (size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c].is_zero()) continue;
      NfElem m = rows[i][c];
      for (size_t k = c; k < ncols; ++k)
        if (!rows[r][k].is_zero()) rows[i][k] -= m * rows[r][k];
    }
    ++r;
  }
  return r;
}

// Basis of the right kernel of a matrix.
std::vector<std::vector<NfElem>> kernel(std::vector<std::vector<NfElem>> rows, size_t ncols) {
  std::vector<int> pivcol;
  size_t r = 0;
  for (size_t c = 0; c < ncols && r < rows.size(); ++c) {
    size_t piv = r;
    while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    NfElem inv = rows[r][c].inverse();
    for (size_t k = 0; k < ncols; ++k) rows[r][k] *= inv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c].is_zero()) continue;
      NfElem m = rows[i][c];
      for (size_t k = 0; k < ncols; ++k) rows[i][k] -= m * rows[r][k];
    }
    pivcol.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<std::vector<NfElem>> basis;
  for (size_t free = 0; free < ncols; ++free) {
    if (std::find(pivcol.begin(), pivcol.end(), static_cast<int>(free)) != pivcol.end()) continue;
    std::vector<NfElem> v(ncols, NfElem(0));
    v[free] = 1;
    for (size_t i = 0; i < pivcol.size(); ++i) v[pivcol[i]] = -rows[i][free];
    basis.push_back(v);
  }
  return basis;
}

// dim K[x,y] / ((gx, gy) + m^N).
int quotient_dim(const MultiPoly& gx, const MultiPoly& gy, int N) {
  std::vector<std::pair<int, int>> monos;
  std::map<std::pair<int, int>, size_t> idx;
  for (int deg = 0; deg < N; ++deg)
    for (int a = deg; a >= 0; --a) {
      idx[{a, deg - a}] = monos.size();
      monos.emplace_back(a, deg - a);
    }
  std::vector<std::vector<NfElem>> rows;
  for (const MultiPoly* G : {&gx, &gy}) {
    if (G->is_zero()) continue;
    int ord = G->min_degree();
    for (const auto& [i, j] : monos) {
      if (i + j + ord >= N) continue;
      std::vector<NfElem> row(monos.size(), NfElem(0));
      for (const auto& [e, c] : G->terms()) {
        int a = e[0] + i, b = e[1] + j;
        if (a + b < N) row[idx[{a, b}]] = c;
      }
      rows.push_back(std::move(row));
    }
  }
  return static_cast<int>(monos.size() - rank(rows, monos.size()));
}

// Strict transform multiplicity at the point of the exceptional line over
// the repeated tangent direction of a triple point.
int first_neighborhood_multiplicity(const MultiPoly& g) {
  MultiPoly c = g.homogeneous_part(3);
  MultiPoly L = mgcd(c.derivative(0), c.derivative(1));
  if (L.total_degree() == 2) L = squarefree_decomposition(L).factors.front().first;
  if (L.total_degree() != 1) throw InternalError("tangent cone has no repeated line");
  NfElem a = L.coeff({1, 0}), b = L.coeff({0, 1});
  MultiPoly U = MultiPoly::variable(UV, 0), V = MultiPoly::variable(UV, 1);
  MultiPoly G = a.is_zero() ? g.compose({V, U}) : g.compose({a.inverse() * (U - b * V), V});
  MultiPoly blown = G.compose({U * V, V});
  MultiPoly strict(UV);
  for (const auto& [e, k] : blown.terms()) strict.add_term({e[0], e[1] - 3}, k);
  return strict.min_degree();
}

std::vector<std::pair<int, int>> directions() {
  return {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {1, 2}, {2, 1}, {1, -2}, {2, -1}, {1, 3}, {3, 1}, {3, -1}, {1, -3}};
}

bool all_vanish(const std::vector<MultiPoly>& ps, const std::vector<NfElem>& pt) {
  for (const auto& p : ps)
    if (!p.eval(pt).is_zero()) return false;
  return true;
}

// All partial derivatives of f of order exactly k.
std::vector<MultiPoly> partials_of_order(const MultiPoly& f, int k) {
  std::vector<MultiPoly> cur{f};
  for (int s = 0; s < k; ++s) {
    std::vector<MultiPoly> nxt;
    for (const auto& p : cur)
      for (size_t i = 0; i < f.nvars(); ++i) {
        MultiPoly d = p.derivative(i);
        if (!d.is_zero() && std::find(nxt.begin(), nxt.end(), d) == nxt.end()) nxt.push_back(d);
      }
    cur = std::move(nxt);
  }
  return cur;
}

// Primitive integer vectors of max-norm exactly h, first nonzero entry positive.
template <class Fn>
bool for_each_primitive(size_t n, int h, Fn&& fn) {
  std::vector<int> v(n, -h);
  while (true) {
    int mx = 0, first = 0, g = 0;
    for (int x : v) {
      mx = std::max(mx, std::abs(x));
      if (!first && x) first = x;
      g = std::gcd(g, std::abs(x));
    }
    if (mx == h && first > 0 && g == 1)
      if (fn(v)) return true;
    size_t i = 0;
    while (i < n && v[i] == h) v[i++] = -h;
    if (i == n) return false;
    ++v[i];
  }
}

std::vector<NfElem> to_nf_vec(const std::vector<int>& v) {
  std::vector<NfElem> out;
  for (int x : v) out.emplace_back(x);
  return out;
}

NfElem sqrt_or_adjoin(const NfElem& c) {
  if (auto s = nf_sqrt(c)) return *s;
  if (!c.is_rational()) throw Unsupported("square root over an algebraic coordinate");
  FieldPtr k = NumberField::make(nullptr, to_nf(QPoly{-c.rational(), Rational(0), Rational(1)}), "r");
  return NfElem::generator(k);
}

}  // namespace

std::string fresh_name(const std::string& base, const std::vector<std::string>& taken) {
  std::string s = base;
  while (var_index(taken, s) >= 0) s += "_";
  return s;
}

GeometricModel build_model(const MultiPoly& input, const NfElem& unit) {
  GeometricModel m;
  m.unit = unit;
  m.f = restrict_to_effective(input);
  if (m.f.is_constant()) throw Error("build_model needs a nonconstant radicand");
  m.n = static_cast<int>(m.f.nvars());
  m.d = m.f.total_degree();
  m.r = (m.d + 1) / 2;
  const auto& xs = m.f.vars();
  std::string z = fresh_name("z", xs);
  std::vector<std::string> taken = xs;
  taken.push_back(z);
  std::string w = fresh_name("w", taken);
  m.F = homogenize(m.f, z);
  std::vector<std::string> vv{z};
  vv.insert(vv.end(), xs.begin(), xs.end());
  vv.push_back(w);
  MultiPoly Z = MultiPoly::variable(vv, 0), W = MultiPoly::variable(vv, vv.size() - 1);
  MultiPoly Fv = m.F.with_vars(vv);
  m.V = m.d <= 2 ? W * W - unit * Z.pow(2 - m.d) * Fv : Z.pow(m.d - 2) * W * W - unit * Fv;
  if (m.n == 2) m.B = homogenize(m.f, fresh_name("s", xs), 2 * m.r);
  return m;
}

// ---- points -----------------------------------------------------------------

int AlgebraicPoint::chart() const {
  for (size_t i = 0; i < coords.size(); ++i)
    if (!coords[i].is_zero()) return static_cast<int>(i);
  return -1;
}

std::string AlgebraicPoint::to_string() const {
  std::string s = "(";
  for (size_t i = 0; i < coords.size(); ++i) {
    if (i) s += " : ";
    s += coords[i].to_string();
  }
  s += ")";
  if (field) s += " over " + field->describe();
  return s;
}

AlgebraicPoint make_point(std::vector<NfElem> coords, int orbit_size) {
  AlgebraicPoint p;
  size_t i = 0;
  while (i < coords.size() && coords[i].is_zero()) ++i;
  if (i == coords.size()) throw InternalError("projective point with all coordinates zero");
  NfElem inv = coords[i].inverse();
  for (auto& c : coords) c *= inv;
  p.field = field_of(coords);
  p.coords = std::move(coords);
  p.orbit_size = orbit_size;
  return p;
}

AlgebraicPoint affine_point(std::vector<NfElem> coords, int orbit_size) {
  AlgebraicPoint p;
  p.field = field_of(coords);
  p.coords = std::move(coords);
  p.orbit_size = orbit_size;
  return p;
}

MultiPoly translate(const MultiPoly& g, const std::vector<NfElem>& point) {
  std::vector<MultiPoly> images;
  for (size_t i = 0; i < g.nvars(); ++i)
    images.push_back(MultiPoly::variable(g.vars(), i) + MultiPoly::constant(g.vars(), point[i]));
  return g.compose(images);
}

int multiplicity_at(const MultiPoly& g, const std::vector<NfElem>& point) {
  MultiPoly t = translate(g, point);
  return t.is_zero() ? -1 : t.min_degree();
}

int projective_multiplicity(const MultiPoly& H, const AlgebraicPoint& p) {
  int c = p.chart();
  std::vector<std::string> names;
  for (size_t i = 0; i + 1 < H.nvars(); ++i) names.push_back("t" + std::to_string(i));
  std::vector<MultiPoly> images;
  size_t k = 0;
  for (size_t i = 0; i < H.nvars(); ++i) {
    if (static_cast<int>(i) == c) {
      images.push_back(MultiPoly::constant(names, NfElem(1)));
    } else {
      images.push_back(MultiPoly::variable(names, k++) + MultiPoly::constant(names, p.coords[i]));
    }
  }
  MultiPoly h = H.compose(images);
  return h.is_zero() ? -1 : h.min_degree();
}

std::vector<SingularPoint> affine_singular_points(const MultiPoly& b) {
  if (b.nvars() != 2) throw InternalError("affine_singular_points expects a plane curve");
  if (!b.is_rational()) throw Unsupported("singular points of a curve with algebraic coefficients");
  std::vector<SingularPoint> out;
  if (b.total_degree() < 2) return out;
  MultiPoly bx = b.derivative(0), by = b.derivative(1);
  std::vector<QPoly> res;
  for (const auto& [v1, v2] : directions()) {
    MultiPoly dv = NfElem(v1) * bx + NfElem(v2) * by;
    if (dv.is_zero() || !mgcd(b, dv).is_constant()) continue;
    res.push_back(resultant_main(to_bipoly(b), to_bipoly(dv)));
    if (res.size() == 2) break;
  }
  if (res.size() < 2) throw NonReduced("curve shares a component with its directional derivatives");
  QPoly R = gcd(res[0], res[1]);
  if (R.degree() < 1) return out;
  auto xfac = factor(R);
  for (const auto& [phi, mult] : xfac.factors) {
    (void)mult;
    NfElem x0;
    FieldPtr k1;
    if (phi.degree() == 1) {
      x0 = NfElem(-phi.coeff(0) / phi.coeff(1));
    } else {
      k1 = NumberField::make(nullptr, to_nf(phi), "a");
      x0 = NfElem::generator(k1);
    }
    UniPoly<NfElem> h = gcd(gcd(b.substitute_value(0, x0).to_univariate(1), bx.substitute_value(0, x0).to_univariate(1)),
                            by.substitute_value(0, x0).to_univariate(1));
    for (const auto& [y0, dy] : grouped_roots(h, k1, "b")) {
      SingularPoint sp;
      sp.point = affine_point({x0, y0}, phi.degree() * dy);
      sp.local = local_equation(b, {x0, y0});
      sp.multiplicity = sp.local.min_degree();
      if (sp.multiplicity < 2) throw InternalError("elimination produced a smooth point");
      out.push_back(std::move(sp));
    }
  }
  return out;
}

std::vector<SingularPoint> singular_points(const MultiPoly& B) {
  if (B.nvars() != 3) throw InternalError("singular_points expects a plane projective curve");
  if (!B.is_rational()) throw Unsupported("singular points of a curve with algebraic coefficients");
  auto hd = is_homogeneous(B);
  if (!hd || *hd < 2) throw InternalError("singular_points expects a homogeneous curve of degree >= 2");
  std::vector<SingularPoint> out;
  const auto& vs = B.vars();
  std::vector<std::string> aff{vs[1], vs[2]};

  // chart s = 1
  MultiPoly b = B.compose({MultiPoly::constant(aff, NfElem(1)), MultiPoly::variable(aff, 0), MultiPoly::variable(aff, 1)});
  for (auto& sp : affine_singular_points(b)) {
    std::vector<NfElem> c{NfElem(1), sp.point.coords[0], sp.point.coords[1]};
    sp.point = make_point(c, sp.point.orbit_size);
    out.push_back(std::move(sp));
  }

  // s = 0, y1 = 1
  std::vector<MultiPoly> partials{B, B.derivative(0), B.derivative(1), B.derivative(2)};
  auto at_infinity = [&](const MultiPoly& p) {
    return p.substitute_value(0, NfElem(0)).substitute_value(1, NfElem(1)).to_univariate(2);
  };
  UniPoly<NfElem> h;
  for (const auto& p : partials) h = gcd(h, at_infinity(p));
  for (const auto& [t0, dt] : grouped_roots(h, nullptr, "a")) {
    SingularPoint sp;
    sp.point = make_point({NfElem(0), NfElem(1), t0}, dt);
    sp.local = B.compose({MultiPoly::variable(UV, 0), MultiPoly::constant(UV, NfElem(1)),
                          MultiPoly::variable(UV, 1) + MultiPoly::constant(UV, t0)});
    sp.multiplicity = sp.local.min_degree();
    out.push_back(std::move(sp));
  }

  // (0 : 0 : 1)
  std::vector<NfElem> corner{NfElem(0), NfElem(0), NfElem(1)};
  if (all_vanish(partials, corner)) {
    SingularPoint sp;
    sp.point = make_point(corner);
    sp.local = B.compose({MultiPoly::variable(UV, 0), MultiPoly::variable(UV, 1), MultiPoly::constant(UV, NfElem(1))});
    sp.multiplicity = sp.local.min_degree();
    out.push_back(std::move(sp));
  }
  for (const auto& sp : out)
    if (sp.multiplicity < 2) throw InternalError("singular point of multiplicity < 2");
  return out;
}

// ---- local invariants -------------------------------------------------------

int milnor_fulton(const MultiPoly& g) {
  if (g.nvars() != 2) throw InternalError("milnor_fulton expects two variables");
  MultiPoly P = primitive_part(g.derivative(0)), Q = primitive_part(g.derivative(1));
  // mu <= (D-1)^2, so m^mu lies in the local ideal and higher terms never matter
  const int D = g.total_degree();
  const int keep = (D - 1) * (D - 1) + 1;
  const Exponent origin{0, 0};
  int total = 0;
  while (true) {
    check_deadline();
    if (P.is_zero() || Q.is_zero()) throw NonIsolated();
    if (!P.coeff(origin).is_zero() || !Q.coeff(origin).is_zero()) return total;
    UniPoly<NfElem> p = P.substitute_value(1, NfElem(0)).to_univariate(0);
    UniPoly<NfElem> q = Q.substitute_value(1, NfElem(0)).to_univariate(0);
    if (p.is_zero() && q.is_zero()) throw NonIsolated();
    if (p.is_zero()) {
      total += order_at_zero(q);
      P = drop_y(P);
      continue;
    }
    if (q.is_zero()) {
      total += order_at_zero(p);
      Q = drop_y(Q);
      continue;
    }
    if (p.degree() > q.degree()) {
      std::swap(P, Q);
      std::swap(p, q);
    }
    // Q - A P with A = q div p leaves Q(x, 0) of lower degree than p
    MultiPoly A = MultiPoly::from_univariate(P.vars(), 0, divmod(q, p).first);
    Q = primitive_part(truncate(Q - A * P, keep));
  }
}

int milnor_quotient(const MultiPoly& g) {
  if (g.nvars() != 2) throw InternalError("milnor_quotient expects two variables");
  MultiPoly gx = g.derivative(0), gy = g.derivative(1);
  int D = g.total_degree();
  int cap = (D - 1) * (D - 1) + 2;
  int prev = -1;
  for (int N = 1; N <= cap; ++N) {
    int d = quotient_dim(gx, gy, N);
    if (d == prev) return d;
    prev = d;
  }
  throw NonIsolated();
}

int milnor_number(const MultiPoly& g) {
  int a = milnor_fulton(g);
  int b = milnor_quotient(g);
  if (a != b)
    throw InternalError("Milnor number methods disagree (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
  return a;
}

std::string to_string(CubicShape s) {
  switch (s) {
    case CubicShape::ThreeDistinctLines: return "ThreeDistinctLines";
    case CubicShape::DoublePlusSimpleLine: return "DoublePlusSimpleLine";
    case CubicShape::TripleLine: return "TripleLine";
  }
  return "";
}

CubicShape tangent_cone_cubic_shape(const MultiPoly& g) {
  MultiPoly c = g.homogeneous_part(3);
  if (c.is_zero()) throw InternalError("tangent cone is not a cubic");
  NfElem a = c.coeff({3, 0}), b = c.coeff({2, 1}), k = c.coeff({1, 2}), d = c.coeff({0, 3});
  NfElem disc = b * b * k * k - NfElem(4) * a * k * k * k - NfElem(4) * b * b * b * d -
                NfElem(27) * a * a * d * d + NfElem(18) * a * b * k * d;
  if (!disc.is_zero()) return CubicShape::ThreeDistinctLines;
  MultiPoly hess = c.derivative(0).derivative(0) * c.derivative(1).derivative(1) -
                   c.derivative(0).derivative(1).pow(2);
  return hess.is_zero() ? CubicShape::TripleLine : CubicShape::DoublePlusSimpleLine;
}

std::string SingularityRecord::label() const {
  switch (cls) {
    case SingClass::Smooth: return "Smooth";
    case SingClass::A: return "A" + std::to_string(index);
    case SingClass::D: return "D" + std::to_string(index);
    case SingClass::E6: return "E6";
    case SingClass::E7: return "E7";
    case SingClass::E8: return "E8";
    case SingClass::NonSimple: return "NonSimple";
  }
  return "";
}

SingularityRecord classify_local(const MultiPoly& g) {
  if (g.nvars() != 2) throw InternalError("classify_local expects two variables");
  SingularityRecord rec;
  int m = g.is_zero() ? 0 : g.min_degree();
  rec.multiplicity = m;
  if (m <= 1) return rec;
  rec.milnor = milnor_number(g);
  if (m == 2) {
    rec.cls = SingClass::A;
    rec.index = rec.milnor;
    return rec;
  }
  if (m >= 4) {
    rec.cls = SingClass::NonSimple;
    rec.reason = "multiplicity >= 4";
    return rec;
  }
  CubicShape shape = tangent_cone_cubic_shape(g);
  rec.cone = shape;
  if (shape == CubicShape::ThreeDistinctLines) {
    // every direction is a simple root of the cone, so the strict transform is smooth there
    if (rec.milnor != 4) throw InternalError("ordinary triple point with mu != 4");
    rec.cls = SingClass::D;
    rec.index = 4;
    return rec;
  }
  int m1 = first_neighborhood_multiplicity(g);
  if (m1 >= 3) {
    if (shape != CubicShape::TripleLine) throw InternalError("first-neighborhood multiplicity exceeds cone multiplicity");
    rec.cls = SingClass::NonSimple;
    rec.reason = "first-neighborhood multiplicity >= 3";
    return rec;
  }
  if (shape == CubicShape::DoublePlusSimpleLine) {
    if (rec.milnor < 5) throw InternalError("D-type singularity with mu < 5");
    rec.cls = SingClass::D;
    rec.index = rec.milnor;
    return rec;
  }
  switch (rec.milnor) {
    case 6: rec.cls = SingClass::E6; break;
    case 7: rec.cls = SingClass::E7; break;
    case 8: rec.cls = SingClass::E8; break;
    default: throw InternalError("simple triple-line singularity with mu = " + std::to_string(rec.milnor));
  }
  return rec;
}

SingularityRecord classify_singularity(const MultiPoly& g, const AlgebraicPoint& p) {
  SingularityRecord rec = classify_local(local_equation(g, p.coords));
  rec.point = p;
  return rec;
}

SimplicityReport all_simple_curve(const MultiPoly& B) {
  SimplicityReport rep;
  rep.degree = B.total_degree();
  if (squarefree_part(B) != B.monic()) throw NonReduced("branch curve has a repeated component");
  for (const auto& sp : singular_points(B)) {
    SingularityRecord rec = classify_local(sp.local);
    rec.point = sp.point;
    rep.total_milnor += rec.milnor * sp.point.orbit_size;
    if (!rec.is_simple()) rep.all_simple = false;
    rep.records.push_back(std::move(rec));
  }
  int D = rep.degree;
  if (rep.total_milnor > (D - 1) * (D - 1))
    throw InternalError("total Milnor number exceeds (D-1)^2");
  return rep;
}

SimplicityReport all_simple(const GeometricModel& model) {
  if (!model.B) throw InternalError("all_simple needs a bivariate model");
  return all_simple_curve(*model.B);
}

// ---- special points ---------------------------------------------------------

std::optional<AlgebraicPoint> triple_point_of_cubic(const MultiPoly& F) {
  auto hd = is_homogeneous(F);
  if (!hd || *hd != 3) throw Error("triple_point_of_cubic expects a homogeneous cubic");
  if (squarefree_part(F) != F.monic()) throw NonReduced("cubic form has a repeated factor");
  const size_t k = F.nvars();
  std::vector<std::vector<NfElem>> rows;
  for (size_t i = 0; i < k; ++i)
    for (size_t j = i; j < k; ++j) {
      MultiPoly L = F.derivative(i).derivative(j);
      std::vector<NfElem> row(k, NfElem(0));
      for (const auto& [e, c] : L.terms())
        for (size_t t = 0; t < k; ++t)
          if (e[t] == 1) row[t] = c;
      rows.push_back(row);
    }
  auto ker = kernel(rows, k);
  if (ker.empty()) return std::nullopt;
  AlgebraicPoint p = make_point(ker.front());
  std::vector<MultiPoly> checks{F};
  for (size_t i = 0; i < k; ++i) checks.push_back(F.derivative(i));
  if (!all_vanish(checks, p.coords) || projective_multiplicity(F, p) != 3)
    throw InternalError("triple point failed verification");
  return p;
}

HighMultResult high_mult_point_search(const GeometricModel& model, const SearchOptions& opt) {
  HighMultResult res;
  const int d = model.d, n = model.n;
  if (d <= 2) {
    res.point = point_on_quadric(model, opt.max_height);
    res.method = "regular point of a quadric";
    return res;
  }
  const int target = d - 1;
  const MultiPoly& f = model.f;
  std::vector<AlgebraicPoint> found;
  auto accept = [&](std::vector<NfElem> coords) {
    AlgebraicPoint p = make_point(std::move(coords));
    if (projective_multiplicity(model.V, p) == target) found.push_back(p);
  };
  auto lift_direction = [&](const std::vector<NfElem>& x0) {
    // (0 : x0 : w0) with w0^2 = unit f_2(x0)
    std::vector<NfElem> c{NfElem(0)};
    c.insert(c.end(), x0.begin(), x0.end());
    c.push_back(sqrt_or_adjoin(model.unit * f.homogeneous_part(2).eval(x0)));
    accept(c);
  };
  // conditions at infinity: f_j has multiplicity >= j - 1 at x0 for j = 3..d
  std::vector<MultiPoly> inf_checks;
  for (int j = 3; j <= d; ++j) {
    MultiPoly fj = f.homogeneous_part(j);
    for (int k = 0; k < j - 1; ++k)
      for (auto& p : partials_of_order(fj, k)) inf_checks.push_back(p);
  }
  std::vector<MultiPoly> aff_checks{f};
  for (size_t i = 0; i < f.nvars(); ++i) aff_checks.push_back(f.derivative(i));

  if (n <= 2) {
    res.method = "elimination";
    if (d == 3 && n == 2) {
      for (const auto& sp : affine_singular_points(f)) accept({NfElem(1), sp.point.coords[0], sp.point.coords[1], NfElem(0)});
    }
    if (n == 2) {
      // a root of the binary form f_d of multiplicity >= d - 1 is unique, hence rational
      MultiPoly fd = f.homogeneous_part(d);
      QPoly p = as_q(fd.substitute_value(1, NfElem(1)).to_univariate(0));
      std::vector<std::vector<NfElem>> dirs;
      if (d - p.degree() >= d - 1) dirs.push_back({NfElem(1), NfElem(0)});
      for (const auto& [fac, mult] : squarefree_decomposition(p).factors)
        if (mult >= d - 1 && fac.degree() == 1) dirs.push_back({NfElem(-fac.coeff(0) / fac.coeff(1)), NfElem(1)});
      for (const auto& x0 : dirs)
        if (all_vanish(inf_checks, x0)) lift_direction(x0);
    }
    for (const auto& p : found)
      if (p.is_rational()) {
        res.point = p;
        return res;
      }
    if (!found.empty()) res.point = found.front();
    res.certified_empty = found.empty();
    return res;
  }

  res.method = "bounded-height scan";
  long budget = opt.budget;
  if (d == 3) {
    for (int h = 1; h <= opt.max_height && found.empty() && budget > 0; ++h) {
      for_each_primitive(static_cast<size_t>(n) + 1, h, [&](const std::vector<int>& v) {
        check_deadline();
        if (--budget < 0) return true;
        if (v[0] <= 0) return false;
        std::vector<NfElem> x0;
        for (int i = 0; i < n; ++i) {
          Rational x(v[i + 1], v[0]);
          x.canonicalize();
          x0.push_back(NfElem(x));
        }
        if (all_vanish(aff_checks, x0)) {
          std::vector<NfElem> c{NfElem(1)};
          c.insert(c.end(), x0.begin(), x0.end());
          c.push_back(NfElem(0));
          accept(c);
        }
        return !found.empty();
      });
    }
  }
  budget = opt.budget;
  for (int h = 1; h <= opt.max_height && found.empty() && budget > 0; ++h) {
    for_each_primitive(static_cast<size_t>(n), h, [&](const std::vector<int>& v) {
      check_deadline();
      if (--budget < 0) return true;
      std::vector<NfElem> x0 = to_nf_vec(v);
      if (all_vanish(inf_checks, x0)) lift_direction(x0);
      return !found.empty();
    });
  }
  if (!found.empty()) res.point = found.front();
  return res;
}

AlgebraicPoint point_on_quadric(const GeometricModel& model, int max_height) {
  if (model.d > 2) throw InternalError("point_on_quadric needs degree <= 2");
  const MultiPoly& f = model.f;
  const NfElem& unit = model.unit;
  const size_t n = f.nvars();
  const MultiPoly& H = model.V;
  std::vector<MultiPoly> grad;
  for (size_t i = 0; i < H.nvars(); ++i) grad.push_back(H.derivative(i));
  auto regular = [&](const std::vector<NfElem>& c) {
    for (const auto& g : grad)
      if (!g.eval(c).is_zero()) return true;
    return false;
  };
  std::optional<AlgebraicPoint> hit;
  const bool integral = unit.is_rational() && model.F.is_rational();
  if (integral) {
    // integer form G = L * unit * z^(2-d) * F; w is rational iff L * G(v) is a square
    Integer L = 1;
    for (const auto& [e, c] : model.F.terms()) L = lcm(L, Integer(Rational(unit.rational() * c.rational()).get_den()));
    std::vector<std::pair<Exponent, Integer>> G;
    for (const auto& [e, c] : model.F.terms()) {
      Exponent e2 = e;
      e2[0] += 2 - std::min(model.d, 2);
      G.emplace_back(e2, Integer(L * unit.rational() * c.rational()));
    }
    Integer val, mono, t;
    for (int h = 1; h <= max_height && !hit; ++h) {
      for_each_primitive(n + 1, h, [&](const std::vector<int>& v) {
        if (v[0] <= 0) return false;
        val = 0;
        for (const auto& [e, c] : G) {
          mono = c;
          for (size_t i = 0; i < e.size(); ++i)
            if (e[i]) {
              mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(std::abs(v[i])), e[i]);
              if (v[i] < 0 && e[i] % 2) t = -t;
              mono *= t;
            }
          val += mono;
        }
        val *= L;
        if (sgn(val) < 0 || !mpz_perfect_square_p(val.get_mpz_t())) return false;
        Integer root = sqrt(val);
        std::vector<NfElem> c = to_nf_vec(v);
        Rational w(root, L);
        w.canonicalize();
        c.push_back(NfElem(w));
        if (!regular(c)) return false;
        hit = make_point(c);
        return true;
      });
    }
  }
  for (int h = 1; h <= max_height && !hit && !integral; ++h) {
    for_each_primitive(n + 1, h, [&](const std::vector<int>& v) {
      if (v[0] <= 0) return false;
      std::vector<NfElem> c = to_nf_vec(v);
      NfElem rhs = unit * model.F.eval(c);
      for (int k = model.d; k < 2; ++k) rhs = rhs * c[0];
      if (!rhs.is_rational()) return false;
      auto s = rational_sqrt(rhs.rational());
      if (!s) return false;
      c.push_back(NfElem(*s));
      if (!regular(c)) return false;
      hit = make_point(c);
      return true;
    });
  }
  if (hit) return *hit;
  // adjoin a square root at an affine point where f does not vanish
  for (int h = 0;; ++h) {
    std::vector<NfElem> x0(n, NfElem(h));
    NfElem val = unit * f.eval(x0);
    if (val.is_zero()) continue;
    std::vector<NfElem> c{NfElem(1)};
    c.insert(c.end(), x0.begin(), x0.end());
    c.push_back(sqrt_or_adjoin(val));
    return make_point(c);
  }
}

}  // namespace ratroot
