#pragma once

#include <vector>

#include "ratroot/upoly.hpp"

namespace ratroot {

/// Bivariate polynomial over Q stored as coefficients in the main variable,
/// each coefficient a QPoly in the other variable.
using QBiPoly = std::vector<QPoly>;

/// Resultant with respect to the main variable, as a polynomial in the
/// other variable. Computed by evaluation at integer points where neither
/// leading coefficient vanishes, followed by Newton interpolation.
QPoly resultant_main(const QBiPoly& a, const QBiPoly& b);

/// Swap the roles of the two variables.
QBiPoly transpose(const QBiPoly& a);

/// Newton interpolation through (xs[i], ys[i]).
QPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

}  // namespace ratroot
