#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace ratroot {

using Integer = mpz_class;
using Rational = mpq_class;

inline bool is_zero_value(const Rational& q) { return sgn(q) == 0; }

/// Exact square root of a rational, if it is a square in Q.
std::optional<Rational> rational_sqrt(const Rational& q);

/// "p" or "p/q", the same spelling the parser accepts.
std::string to_string(const Rational& q);

/// Largest n with n*n <= |q|, used for bounded point scans.
Integer isqrt(const Integer& n);

}  // namespace ratroot
