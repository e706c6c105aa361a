#include "ratroot/rational.hpp"

namespace ratroot {

Integer isqrt(const Integer& n) {
  Integer r;
  Integer a = abs(n);
  mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  const Integer& num = q.get_num();
  const Integer& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  Rational r(isqrt(num), isqrt(den));
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace ratroot
