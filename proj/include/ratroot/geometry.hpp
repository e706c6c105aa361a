#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ratroot/mpoly.hpp"

namespace ratroot {

/// Radicand together with its projective models.
struct GeometricModel {
  MultiPoly f;  // squarefree, in its effective variables
  NfElem unit{1};  // the hypersurface is built for unit * f
  int n = 0;    // number of effective variables
  int d = 0;    // total degree
  int r = 0;    // ceil(d / 2)
  MultiPoly F;  // homogenization, variables (z, x_1..x_n)
  MultiPoly V;  // z^(d-2) w^2 - unit F (w^2 - unit z^(2-d) F for d <= 2), variables (z, x, w)
  std::optional<MultiPoly> B;  // branch curve s^(2r-d) F, variables (s, y1, y2); n == 2 only
};

GeometricModel build_model(const MultiPoly& f, const NfElem& unit = NfElem(1));

/// Projective point with coordinates in a tower of height <= 2, stored with
/// the first nonzero coordinate equal to 1. One point stands for its whole
/// Galois orbit, of size `orbit_size`.
struct AlgebraicPoint {
  std::vector<NfElem> coords;
  FieldPtr field;
  int orbit_size = 1;

  int chart() const;  // index of the coordinate equal to 1
  bool is_rational() const { return !field; }
  std::string to_string() const;
};

AlgebraicPoint make_point(std::vector<NfElem> coords, int orbit_size = 1);
/// Affine point: coordinates kept as given.
AlgebraicPoint affine_point(std::vector<NfElem> coords, int orbit_size = 1);

struct SingularPoint {
  AlgebraicPoint point;
  int multiplicity = 0;
  MultiPoly local;  // equation in the chart of the point, translated to the origin
};

/// Singular points of a reduced plane curve B(s, y1, y2), one entry per
/// Galois orbit, in a deterministic order.
std::vector<SingularPoint> singular_points(const MultiPoly& B);

/// Singular points of a reduced affine curve b(x, y) over Q.
std::vector<SingularPoint> affine_singular_points(const MultiPoly& b);

/// Least total degree of g after translating `point` (affine, in g's ring)
/// to the origin; 0 when g does not vanish there.
int multiplicity_at(const MultiPoly& g, const std::vector<NfElem>& point);

/// g translated so that `point` becomes the origin.
MultiPoly translate(const MultiPoly& g, const std::vector<NfElem>& point);

/// Intersection multiplicity of the partials at the origin, by Fulton's
/// algorithm.
int milnor_fulton(const MultiPoly& g);
/// dim K[x,y] / ((g_x, g_y) + m^N), iterated until it stabilizes.
int milnor_quotient(const MultiPoly& g);
/// Both methods; throws InternalError if they disagree.
int milnor_number(const MultiPoly& g);

enum class CubicShape { ThreeDistinctLines, DoublePlusSimpleLine, TripleLine };
std::string to_string(CubicShape s);
/// Shape of the degree-3 part of a local equation with a triple point.
CubicShape tangent_cone_cubic_shape(const MultiPoly& g);

enum class SingClass { Smooth, A, D, E6, E7, E8, NonSimple };

struct SingularityRecord {
  AlgebraicPoint point;
  int multiplicity = 0;
  int milnor = 0;
  SingClass cls = SingClass::Smooth;
  int index = 0;       // subscript for A and D
  std::string reason;  // for NonSimple
  std::optional<CubicShape> cone;

  bool is_simple() const { return cls != SingClass::NonSimple; }
  std::string label() const;
};

/// Classify a local equation at the origin (two variables).
SingularityRecord classify_local(const MultiPoly& g);
/// Classify the germ of the affine curve g at an affine point.
SingularityRecord classify_singularity(const MultiPoly& g, const AlgebraicPoint& p);

struct SimplicityReport {
  bool all_simple = true;
  int degree = 0;
  int total_milnor = 0;  // summed over whole orbits
  std::vector<SingularityRecord> records;
};

/// Classification of every singular point of the branch curve.
SimplicityReport all_simple(const GeometricModel& model);
SimplicityReport all_simple_curve(const MultiPoly& B);

/// A point where all second partials of a cubic form vanish.
std::optional<AlgebraicPoint> triple_point_of_cubic(const MultiPoly& F);

struct SearchOptions {
  int max_height = 50;
  long budget = 20000;  // candidate evaluations per scan
};

struct HighMultResult {
  std::optional<AlgebraicPoint> point;  // coordinates (z, x_1..x_n, w)
  bool certified_empty = false;
  std::string method;
};

/// A point of multiplicity exactly d - 1 on the hypersurface V of the
/// model (d >= 3). Exact for n <= 2, a bounded-height scan otherwise.
HighMultResult high_mult_point_search(const GeometricModel& model, const SearchOptions& opt = {});

/// A regular point of V for d <= 2: affine rational points by increasing
/// height first, then a point with W adjoined as a square root.
AlgebraicPoint point_on_quadric(const GeometricModel& model, int max_height = 50);

/// Multiplicity of a homogeneous H at a projective point.
int projective_multiplicity(const MultiPoly& H, const AlgebraicPoint& p);

/// Fresh variable name based on `base`, not in `taken`.
std::string fresh_name(const std::string& base, const std::vector<std::string>& taken);

}  // namespace ratroot
