#include "ratroot/witness.hpp"

#include "ratroot/factor.hpp"

namespace ratroot {

namespace {

RationalFunction normalize_sign(const RationalFunction& h) {
  const NfElem& lc = h.num().leading_coeff();
  if (lc.is_rational() && sgn(lc.rational()) < 0) return -h;
  return h;
}

}  // namespace

WitnessReport parametrize_from_point(const MultiPoly& H, const AlgebraicPoint& q,
                                     const std::vector<std::string>& params, const MultiPoly& radicand) {
  const size_t N = H.nvars();
  if (params.size() + 2 != N) throw InternalError("parametrize_from_point: wrong number of parameters");
  const size_t c = static_cast<size_t>(q.chart());
  const size_t e = (c == N - 1) ? 0 : N - 1;

  std::vector<std::string> ring{fresh_name("t", params)};
  ring.insert(ring.end(), params.begin(), params.end());
  std::vector<MultiPoly> v(N, MultiPoly(params));
  for (size_t i = 0, k = 0; i < N; ++i) {
    if (i == e) v[i] = MultiPoly::constant(params, NfElem(1));
    else if (i != c) v[i] = MultiPoly::variable(params, k++);
  }
  MultiPoly t = MultiPoly::variable(ring, 0);
  std::vector<MultiPoly> images;
  for (size_t i = 0; i < N; ++i) images.push_back(q.coords[i] * t + v[i].with_vars(ring));
  std::vector<MultiPoly> cs = H.compose(images).coeffs_in(0);
  if (cs.size() > 2)
    throw WrongMultiplicity();
  if (cs.size() < 2 || cs[1].is_zero()) throw DegenerateProjection();
  MultiPoly A = cs[1].with_vars(params), B = cs[0].with_vars(params);

  // second intersection of the line with H: -B q + A v
  std::vector<MultiPoly> P;
  for (size_t i = 0; i < N; ++i) P.push_back(-(q.coords[i] * B) + A * v[i]);
  if (P[0].is_zero()) throw DegenerateProjection();

  std::vector<std::string> source(H.vars().begin() + 1, H.vars().end() - 1);
  std::vector<RationalFunction> assign;
  for (size_t i = 1; i + 1 < N; ++i) assign.emplace_back(P[i], P[0]);
  RationalMap map(source, params, assign);
  RationalFunction w(P[N - 1], P[0]);

  RationalFunction image = substitute(radicand.with_vars(source), map);
  if (!(image == w * w)) throw InternalError("projection witness does not square the radicand");
  if (!map.is_nonconstant()) throw DegenerateProjection();
  return {map, normalize_sign(w), map.field()};
}

std::optional<RationalFunction> verify_witness(const RationalMap& map, const RationalFunction& f) {
  if (!map.is_nonconstant()) return std::nullopt;
  RationalFunction g = substitute(f, map);
  if (g.is_zero()) return g;
  if (auto h = is_perfect_square(g)) return normalize_sign(*h);
  // absorb a constant factor: sqrt(c) * h, with sqrt(c) taken in the field
  // of the map when it lies there and adjoined on top of it otherwise
  NfElem c = g.num().leading_coeff();
  RationalFunction scaled(c.inverse() * g.num(), g.den());
  auto h = is_perfect_square(scaled);
  if (!h) return std::nullopt;
  FieldPtr k = common_field(common_field(map.field(), c.field()), common_field(h->num().field(), h->den().field()));
  std::optional<NfElem> s = nf_sqrt(c, k);
  if (!s) {
    UniPoly<NfElem> m(std::vector<NfElem>{-c, NfElem(0), NfElem(1)});
    s = NfElem::generator(NumberField::make(k, m, "c"));
  }
  return RationalFunction(*s * h->num(), h->den());
}

std::optional<RationalFunction> verify_witness(const RationalMap& map, const MultiPoly& f) {
  return verify_witness(map, RationalFunction(f));
}

}  // namespace ratroot
