/**
 * Hyperbolic plane geometry in the upper half-plane model, with the conformal
 * disk model available through the Cayley transform.
 *
 * The half-plane model H = { x + iy : y > 0 } has two kinds of geodesics:
 * vertical rays x = const and semicircles centered on the real axis. Its
 * boundary circle is R together with a single point at infinity. Orientation-
 * preserving isometries are Moebius maps z -> (az+b)/(cz+d) with real entries
 * and positive determinant; orientation-reversing ones act as
 * z -> (a zbar + b)/(c zbar + d) with negative determinant. Reflections across
 * geodesics are the basic orientation-reversing isometries: conjugation
 * z -> -zbar + 2x0 for a vertical line, and circle inversion
 * z -> c + r^2 / (zbar - c) for a semicircle.
 *
 * Key design decisions:
 *
 *  - Isometries are stored as real 2x2 matrices plus an orientation flag
 *    rather than complex matrices: every isometry generated here is a word in
 *    reflections across geodesics, and those have real coefficient matrices.
 *    Composition tracks the flag (conjugation commutes into the coefficients
 *    because they are real).
 *
 *  - Matrices are normalized projectively by their largest absolute entry,
 *    not by determinant. Words of thousands of reflections have determinant-
 *    normalized entries that overflow doubles (the translation lengths add
 *    up), while the projective action only needs the ratios. normalize() is
 *    called by compose() every few steps, so entries stay in a safe range at
 *    a cost of losing the det = +-1 convention (orientation is the flag, not
 *    the determinant sign).
 *
 *  - Boundary points are (is_infinite, x) pairs and every map acts on them
 *    through exact limit formulas (a/c at infinity, infinity at poles), never
 *    through a large-number proxy.
 *
 *  - Geodesics are closed under isometries only as POINT SETS; apply() maps
 *    the two ideal endpoints and rebuilds the line from them, which is exact
 *    in the same sense as the matrix action and avoids case analysis on the
 *    image type.
 *
 *  - Reflection across a semicircle whose radius has collapsed to zero in
 *    double precision sends every point to the center (the correct limit),
 *    rather than dividing by zero; callers that cannot tolerate the collapsed
 *    regime check the radius themselves.
 */
#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>

namespace triwalk {

using Complex = std::complex<double>;

/// A point of the open upper half-plane (y > 0 is the caller's contract).
using HPoint = Complex;

/// A point of the boundary circle of the half-plane: the real line plus one
/// point at infinity.
struct Boundary {
  bool is_infinite = false;
  double x = 0.0;  // meaningful only when !is_infinite

  static Boundary infinity() { return {true, 0.0}; }
  static Boundary at(double x) { return {false, x}; }

  friend bool operator==(const Boundary&, const Boundary&) = default;
  std::string to_string() const;
};

/// An unoriented geodesic: a vertical ray or a semicircle footed on the real
/// axis. Both are determined by their pair of ideal endpoints.
struct HLine {
  enum class Kind { Vertical, Semicircle };
  Kind kind;
  double x0 = 0.0;      // Vertical: the foot. Semicircle: the center.
  double radius = 0.0;  // Semicircle only; > 0.

  static HLine vertical(double x0);
  static HLine semicircle(double center, double radius);

  /// The two ideal endpoints; a vertical ray ends at infinity.
  std::array<Boundary, 2> endpoints() const;

  /// Signed evaluation g(z): zero on the line, opposite signs on the two
  /// sides. Vertical: Re z - x0. Semicircle: |z - c|^2 - r^2.
  double side_value(const Complex& z) const;

  std::string to_string() const;
};

/// The geodesic with the given distinct ideal endpoints.
HLine line_through(const Boundary& p, const Boundary& q);

/// Which side of the line a point is on: -1 / 0 / +1 by sign of side_value,
/// with |side_value| <= tol collapsed to 0.
int side_of(const HLine& line, const Complex& z, double tol = 0.0);

/// Hyperbolic distance between two points of the upper half-plane:
/// arcosh(1 + |z - w|^2 / (2 Im z Im w)).
double hyperbolic_distance(const Complex& z, const Complex& w);

/// An isometry of the half-plane: z -> M.z (orientation-preserving) or
/// z -> M.zbar (orientation-reversing), M real 2x2 acting as a Moebius map.
class Isometry {
 public:
  /// The identity.
  Isometry();

  /// Moebius action with the given coefficients; reversing means the map
  /// conjugates its argument first. det(a,b;c,d) must be nonzero: positive
  /// for a preserving map, negative for a reversing one.
  Isometry(double a, double b, double c, double d, bool reversing);

  /// Reflection across a geodesic.
  static Isometry reflection(const HLine& line);

  bool reversing() const { return reversing_; }
  const std::array<double, 4>& coeffs() const { return m_; }  // {a, b, c, d}

  /// Composition: (*this)(other(z)).
  Isometry compose(const Isometry& other) const;

  /// Action on an interior point; the image has positive imaginary part up
  /// to rounding.
  Complex apply(const Complex& z) const;

  /// Action on a boundary point, with exact pole/infinity bookkeeping.
  Boundary apply(const Boundary& p) const;

  /// Action on a geodesic, by mapping its ideal endpoints.
  HLine apply(const HLine& line) const;

  /// Rescale so the largest |entry| is 1 (projective normalization).
  void normalize();

  std::string to_string() const;

 private:
  std::array<double, 4> m_;  // row-major {a, b, c, d}
  bool reversing_;
};

/// Cayley transform H -> unit disk, z -> (z - i)/(z + i); the inverse takes
/// w to i(1 + w)/(1 - w).
Complex cayley(const Complex& z);
Complex cayley_inverse(const Complex& w);

/// Boundary circle correspondence: the point at angle theta on the unit
/// circle is the image of the half-plane boundary point returned here
/// (theta = 0 maps to infinity; otherwise x = -cot(theta/2) ... the exact
/// real-line parameterization of the Cayley transform).
Boundary cayley_boundary_inverse(double theta);

/// Angle on the unit circle of the image of a half-plane boundary point.
double cayley_boundary_angle(const Boundary& p);

/// A circle (or line through the origin) in the disk model, as center and
/// radius of the Euclidean circle; geodesics of the disk meet the unit
/// circle at right angles, giving |center|^2 = 1 + radius^2.
struct DiskCircle {
  Complex center;
  double radius;
};

/// The disk-model geodesic through the two boundary angles (each in
/// [0, 2pi)). Throws std::domain_error if the chord is a diameter (the
/// orthogonal "circle" degenerates to a line) within tolerance.
DiskCircle orthocircle(double theta1, double theta2);

}  // namespace triwalk
