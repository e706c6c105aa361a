#include "ratroot/elimination.hpp"

#include <algorithm>

#include "ratroot/deadline.hpp"

namespace ratroot {

namespace {

int main_degree(const QBiPoly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (!a[i].is_zero()) return i;
  return -1;
}

int other_degree(const QBiPoly& a) {
  int d = -1;
  for (const auto& c : a) d = std::max(d, c.degree());
  return d;
}

QPoly specialize(const QBiPoly& a, const Rational& x) {
  std::vector<Rational> c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i].eval(x);
  return QPoly(std::move(c));
}

}  // namespace

QPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  const size_t n = xs.size();
  std::vector<Rational> dd = ys;
  for (size_t j = 1; j < n; ++j)
    for (size_t i = n - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  QPoly r = QPoly::constant(dd[n - 1]);
  for (size_t i = n - 1; i-- > 0;) {
    r = r * QPoly{Rational(-xs[i]), Rational(1)} + QPoly::constant(dd[i]);
  }
  return r;
}

QPoly resultant_main(const QBiPoly& a, const QBiPoly& b) {
  const int da = main_degree(a), db = main_degree(b);
  if (da < 0 || db < 0) return QPoly();
  if (da == 0) return a[0].pow(db);
  if (db == 0) return b[0].pow(da);
  const int bound = da * std::max(other_degree(b), 0) + db * std::max(other_degree(a), 0);
  std::vector<Rational> xs, ys;
  long k = 0;
  while (static_cast<int>(xs.size()) < bound + 1) {
    check_deadline();
    // 0, 1, -1, 2, -2, ...
    long c = (k % 2 == 1) ? (k + 1) / 2 : -(k / 2);
    ++k;
    Rational x(c);
    if (is_zero_value(a[da].eval(x)) || is_zero_value(b[db].eval(x))) continue;
    xs.push_back(x);
    ys.push_back(resultant(specialize(a, x), specialize(b, x)));
  }
  return interpolate(xs, ys);
}

QBiPoly transpose(const QBiPoly& a) {
  const int od = other_degree(a);
  if (od < 0) return {};
  std::vector<std::vector<Rational>> cols(static_cast<size_t>(od) + 1,
                                          std::vector<Rational>(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (int j = 0; j <= a[i].degree(); ++j) cols[j][i] = a[i].coeffs()[j];
  QBiPoly out;
  out.reserve(cols.size());
  for (auto& c : cols) out.emplace_back(std::move(c));
  return out;
}

}  // namespace ratroot
