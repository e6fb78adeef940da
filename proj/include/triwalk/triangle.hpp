/**
 * Reflection triangles in the hyperbolic plane: three geodesics ("walls")
 * whose reflections generate a triangle reflection group, together with an
 * interior base point.
 *
 * A configuration is admissible when every pair of walls either
 *   - crosses inside the plane, in which case the wedge containing the base
 *     point must have angle pi/m for an integer m >= 2 (the pair generates a
 *     dihedral group of order 2m), or
 *   - meets only at the boundary circle (asymptotic walls, m = infinity), or
 *   - stays at positive distance (disjoint walls, m = infinity),
 * and in the non-crossing cases neither wall may separate the base point
 * from the other wall. The base point must lie on no wall. Under these
 * conditions the walls bound the fundamental alcove of the group generated
 * by the three reflections.
 *
 * The boundary action: each wall L_i carries a "one-way reflection" tau_i of
 * the boundary circle that reflects the base side of L_i onto the far side
 * and fixes the far side (and the wall's own ideal endpoints) pointwise.
 * These folds drive the limiting distribution machinery.
 *
 * Key design decisions:
 *
 *  - The Coxeter data is DERIVED from the geometry during validation, never
 *    declared: the angle test pi/m with tolerance 1e-9 either certifies an
 *    integer m or rejects the configuration. This keeps a single source of
 *    truth and makes the validator a genuine admissibility check.
 *
 *  - Wedge angles are computed from the gradients of the walls' side_value
 *    functions, oriented toward the base point: the wedge angle containing
 *    the base is pi - angle(n1, n2). This needs no tangent-vector case
 *    analysis across the vertical/semicircle kinds.
 *
 *  - Tangency (internal or external) of wall circles counts as asymptotic:
 *    the walls share one ideal endpoint and m = infinity, exactly like
 *    distinct vertical walls sharing the endpoint at infinity.
 *
 *  - disk_normalize re-centers everything so the base point is the disk
 *    origin. The walls become Euclidean circles orthogonal to the unit
 *    circle with the base strictly outside each, which is what the
 *    contraction certificate consumes.
 *
 *  - contraction_constant certifies sup_theta min_i (r_i / |e^{i theta} -
 *    c_i|)^2 < 1 over the whole boundary circle: every boundary point is
 *    strictly outside at least one wall circle, and folding by that wall
 *    contracts a neighborhood by at least that factor. A dense grid
 *    followed by local golden-section refinement computes the sup; the
 *    certificate fails (ValidationError) if any grid point sees no
 *    contracting wall.
 */
#pragma once

#include <array>
#include <string>

#include "triwalk/geometry.hpp"

namespace triwalk {

/// Symmetric Coxeter exponents m(i, j) for the three wall pairs; kInfinity
/// encodes m = infinity. Indices are 1-based (walls 1, 2, 3).
struct CoxeterMatrix {
  static constexpr int kInfinity = -1;

  int m12 = kInfinity;
  int m13 = kInfinity;
  int m23 = kInfinity;

  int operator()(int i, int j) const;

  friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;
  std::string to_string() const;
};

/// How two walls sit relative to each other.
struct PairClassification {
  enum class Kind { Crossing, Asymptotic, Disjoint };
  Kind kind;
  double angle = 0.0;              // base-side wedge angle; Crossing only
  int m = CoxeterMatrix::kInfinity;  // angle = pi/m when Crossing
};

/// Classify the pair and, when crossing, measure the wedge containing base.
PairClassification classify_pair(const HLine& a, const HLine& b,
                                 const HPoint& base);

/// A validated reflection-triangle configuration.
struct TriangleConfig {
  std::array<HLine, 3> lines;
  HPoint base;
  CoxeterMatrix coxeter;

  const HLine& line(int i) const { return lines.at(static_cast<size_t>(i - 1)); }
};

/// Checks admissibility (see file comment) and derives the Coxeter matrix.
/// Throws ValidationError with a specific message on any violation.
TriangleConfig make_config(const std::array<HLine, 3>& lines,
                           const HPoint& base);

/// The arithmetic configuration whose limiting boundary law has an exact
/// closed form: walls x = -1/2, |z| = 1, x = 0 with base -1/4 + 5i/4;
/// Coxeter exponents m12 = 3, m23 = 2, m13 = infinity.
TriangleConfig builtin_pgl2();

/// A crossing + two disjoint pairs: walls x = 0, |z| = 2, |z - 5| = 1 with
/// base 2.5 + i; m12 = 2, others infinity.
TriangleConfig builtin_right_angle();

/// The ideal triangle: walls |z| = sqrt(3), |z + sqrt(3)/2| = sqrt(3)/2,
/// |z - sqrt(3)/2| = sqrt(3)/2 with base i; all exponents infinity. Its
/// disk form is symmetric under rotation by 120 degrees.
TriangleConfig builtin_ideal();

/// Side of a wall a boundary point lies on, by the sign convention of
/// HLine::side_value (0 when the point is an ideal endpoint of the wall;
/// the point at infinity is an endpoint of every vertical wall and lies
/// strictly outside every semicircle).
int boundary_side(const HLine& line, const Boundary& p);

/// Side of the wall the base point lies on (never 0 for a validated
/// configuration).
int base_side(const TriangleConfig& cfg, int i);

/// True iff the wall g(L_i) of the alcove g(A) separates g(base) from base:
/// crossing it moves the alcove closer to the identity alcove, i.e. letter i
/// is a right descent of g.
bool is_descent(const TriangleConfig& cfg, const Isometry& g, int i);

/// One-way reflection tau_i on the boundary circle: points strictly on the
/// base side of wall i reflect across it; all other points (far side, or on
/// the wall itself) stay put.
Boundary one_way_reflect(const TriangleConfig& cfg, int i, const Boundary& p);

/// The configuration transported to the unit disk with the base point at
/// the origin: the three walls as Euclidean circles orthogonal to the unit
/// circle. The base side of each wall is the circle's exterior.
struct DiskConfig {
  std::array<DiskCircle, 3> walls;
};

DiskConfig disk_normalize(const TriangleConfig& cfg);

/// One-way fold of a boundary angle by disk wall (c, r): reflect (invert in
/// the wall circle) when e^{i theta} is strictly outside it, else fix.
double disk_fold(const DiskCircle& wall, double theta);

/// The boundary contraction certificate C = sup over the unit circle of
/// min_i (r_i / |e^{i theta} - c_i|)^2, computed on a 2^16 grid with local
/// golden-section refinement. Certifies C < 1; throws ValidationError if
/// some boundary point is inside or on all three wall circles.
double contraction_constant(const DiskConfig& disk);

}  // namespace triwalk
