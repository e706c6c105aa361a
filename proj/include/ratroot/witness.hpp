#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ratroot/geometry.hpp"
#include "ratroot/mpoly.hpp"

namespace ratroot {

/// A verified rationalizing substitution: substitute(f, map) = root^2.
struct WitnessReport {
  RationalMap map;
  RationalFunction root;
  FieldPtr field;
};

/// Projection of the hypersurface H (variables z, x_1..x_n, w) from a point
/// q of multiplicity deg H - 1. Lines through q are parametrized by the
/// hyperplane where q's pivot coordinate vanishes, affinized on one further
/// coordinate; the remaining n coordinates become the target variables
/// `params`. The result is checked against `radicand` (variables x_1..x_n)
/// before it is returned.
WitnessReport parametrize_from_point(const MultiPoly& H, const AlgebraicPoint& q,
                                     const std::vector<std::string>& params, const MultiPoly& radicand);

/// h with substitute(f, map) = h^2, if the map is nonconstant and the image
/// is a square. A constant factor of the image is absorbed by adjoining its
/// square root. Rational h is normalized to a positive leading coefficient.
std::optional<RationalFunction> verify_witness(const RationalMap& map, const RationalFunction& f);
std::optional<RationalFunction> verify_witness(const RationalMap& map, const MultiPoly& f);

}  // namespace ratroot
