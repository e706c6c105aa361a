#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ratroot/number_field.hpp"
#include "ratroot/upoly.hpp"

namespace ratroot {

/// p = unit * prod(f_i ^ m_i), each f_i monic and irreducible over the
/// coefficient field. Factors are sorted by degree, then coefficients.
template <class T>
struct Factorization {
  T unit{0};
  std::vector<std::pair<UniPoly<T>, int>> factors;
};

/// Complete factorization over Q (Zassenhaus: Cantor-Zassenhaus modulo a
/// small prime, Hensel lifting, exhaustive recombination).
Factorization<Rational> factor(const QPoly& p);

/// Complete factorization over the field K generated by the coefficients
/// of p, or over `field` if given (K must have height at most one).
/// Uses Trager's norm method.
Factorization<NfElem> factor_over(const UniPoly<NfElem>& p, const FieldPtr& field = nullptr);

/// Roots of p lying in its coefficient field (or `field`), without repetition.
std::vector<NfElem> roots_in_field(const UniPoly<NfElem>& p, const FieldPtr& field = nullptr);

/// Number of distinct roots of odd multiplicity, i.e. the degree of the
/// odd part of p.
int odd_multiplicity_root_count(const QPoly& p);

/// A square root of e inside `field` (default: the field of e), if one
/// exists. Supported for rationals and height-one fields.
std::optional<NfElem> nf_sqrt(const NfElem& e, const FieldPtr& field = nullptr);

/// Lift a rational polynomial to NfElem coefficients.
UniPoly<NfElem> to_nf(const QPoly& p);
/// The polynomial as a QPoly if all coefficients are rational.
std::optional<QPoly> to_q(const UniPoly<NfElem>& p);

/// Deterministic order on polynomials: degree, then coefficients from the top.
bool poly_less(const QPoly& a, const QPoly& b);

}  // namespace ratroot
