// Upper half-plane model: geodesics, reflections, Moebius actions, the
// boundary circle, the Cayley transform, and disk-model orthocircles.
//
// Pinned values are classical half-plane identities checked by hand
// (inversion in the unit semicircle, translations as double reflections,
// d(i, 2i) = ln 2, and the Cayley images of 0, 1, -1, i, infinity).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "triwalk/errors.hpp"
#include "triwalk/geometry.hpp"

using namespace triwalk;
using doctest::Approx;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("lines, endpoints, sides") {
  const HLine v = HLine::vertical(-0.5);
  CHECK(v.endpoints()[0] == Boundary::at(-0.5));
  CHECK(v.endpoints()[1] == Boundary::infinity());
  CHECK(side_of(v, Complex(0.0, 1.0)) == 1);
  CHECK(side_of(v, Complex(-1.0, 1.0)) == -1);
  CHECK(side_of(v, Complex(-0.5, 7.0)) == 0);

  const HLine s = HLine::semicircle(0.0, 1.0);
  CHECK(s.endpoints()[0] == Boundary::at(-1.0));
  CHECK(s.endpoints()[1] == Boundary::at(1.0));
  CHECK(side_of(s, Complex(0.0, 2.0)) == 1);
  CHECK(side_of(s, Complex(0.0, 0.5)) == -1);
  CHECK(side_of(s, Complex(0.0, 1.0)) == 0);
  CHECK(side_of(s, Complex(0.0, 1.0 + 1e-12), 1e-9) == 0);

  CHECK_THROWS_AS(HLine::semicircle(0.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(HLine::semicircle(0.0, -1.0), std::domain_error);

  const HLine t = line_through(Boundary::at(-1.0), Boundary::at(3.0));
  CHECK(t.kind == HLine::Kind::Semicircle);
  CHECK(t.x0 == Approx(1.0));
  CHECK(t.radius == Approx(2.0));
  const HLine u = line_through(Boundary::infinity(), Boundary::at(2.0));
  CHECK(u.kind == HLine::Kind::Vertical);
  CHECK(u.x0 == Approx(2.0));
  CHECK_THROWS_AS(line_through(Boundary::at(1.0), Boundary::at(1.0)),
                  std::domain_error);
}

TEST_CASE("hyperbolic distance") {
  const Complex i(0.0, 1.0);
  CHECK(hyperbolic_distance(i, Complex(0.0, 2.0)) == Approx(std::log(2.0)));
  CHECK(hyperbolic_distance(i, i) == Approx(0.0));
  // Symmetry and the triangle inequality on a sample triple.
  const Complex a(0.3, 0.7), b(-1.0, 2.0), c(4.0, 0.2);
  CHECK(hyperbolic_distance(a, b) == Approx(hyperbolic_distance(b, a)));
  CHECK(hyperbolic_distance(a, c) <=
        hyperbolic_distance(a, b) + hyperbolic_distance(b, c));
  CHECK_THROWS_AS(hyperbolic_distance(i, Complex(0.0, -1.0)),
                  std::domain_error);
}

TEST_CASE("reflections") {
  const Isometry rv = Isometry::reflection(HLine::vertical(0.0));
  CHECK(rv.reversing());
  const Complex z(1.0, 1.0);
  CHECK(rv.apply(z).real() == Approx(-1.0));
  CHECK(rv.apply(z).imag() == Approx(1.0));

  const Isometry rv2 = Isometry::reflection(HLine::vertical(-0.5));
  CHECK(rv2.apply(Complex(0.25, 1.0)).real() == Approx(-1.25));
  CHECK(rv2.apply(Complex(0.25, 1.0)).imag() == Approx(1.0));

  // Inversion in the unit semicircle: z -> 1/conj(z); fixes i, swaps 2i
  // and i/2.
  const Isometry rs = Isometry::reflection(HLine::semicircle(0.0, 1.0));
  CHECK(std::abs(rs.apply(Complex(0.0, 1.0)) - Complex(0.0, 1.0)) ==
        Approx(0.0));
  CHECK(std::abs(rs.apply(Complex(0.0, 2.0)) - Complex(0.0, 0.5)) ==
        Approx(0.0));
  // Reflection is an involution and preserves hyperbolic distance.
  const Complex w(0.7, 0.4);
  CHECK(std::abs(rs.apply(rs.apply(w)) - w) == Approx(0.0).epsilon(1e-12));
  CHECK(hyperbolic_distance(rs.apply(z), rs.apply(w)) ==
        Approx(hyperbolic_distance(z, w)));

  // Reflection fixes its mirror pointwise.
  const Complex on(std::cos(1.0), std::sin(1.0));
  CHECK(std::abs(rs.apply(on) - on) == Approx(0.0).epsilon(1e-12));
}

TEST_CASE("composition and orientation bookkeeping") {
  const Isometry r0 = Isometry::reflection(HLine::vertical(0.0));
  const Isometry r1 = Isometry::reflection(HLine::vertical(1.0));
  // Two reflections make the translation z + 2 (preserving).
  const Isometry t = r1.compose(r0);
  CHECK(!t.reversing());
  CHECK(t.apply(Complex(0.3, 0.9)).real() == Approx(2.3));
  CHECK(t.apply(Complex(0.3, 0.9)).imag() == Approx(0.9));
  // Boundary action.
  CHECK(t.apply(Boundary::at(3.0)) == Boundary::at(5.0));
  CHECK(t.apply(Boundary::infinity()) == Boundary::infinity());
  const Isometry rs = Isometry::reflection(HLine::semicircle(0.0, 1.0));
  CHECK(rs.apply(Boundary::at(0.0)) == Boundary::infinity());
  CHECK(rs.apply(Boundary::infinity()) == Boundary::at(0.0));
  CHECK(rs.apply(Boundary::at(2.0)) == Boundary::at(0.5));

  // Geodesic action: inversion maps the vertical at 1 to the semicircle
  // with feet 0 and 1.
  const HLine img = rs.apply(HLine::vertical(1.0));
  CHECK(img.kind == HLine::Kind::Semicircle);
  CHECK(img.x0 == Approx(0.5));
  CHECK(img.radius == Approx(0.5));

  // Long products stay numerically sane under projective normalization.
  Isometry g;
  for (int k = 0; k < 2000; ++k) g = t.compose(g);
  const Complex far = g.apply(Complex(0.0, 1.0));
  CHECK(far.real() == Approx(4000.0).epsilon(1e-9));
  CHECK(far.imag() == Approx(1.0).epsilon(1e-9));

  CHECK_THROWS_AS(Isometry(1.0, 0.0, 0.0, 1.0, true), std::domain_error);
  CHECK_THROWS_AS(Isometry(1.0, 2.0, 2.0, 4.0, false), std::domain_error);
}

TEST_CASE("cayley transform") {
  CHECK(std::abs(cayley(Complex(0.0, 1.0))) == Approx(0.0));
  CHECK(cayley(Complex(0.0, 2.0)).real() == Approx(1.0 / 3.0));
  CHECK(cayley(Complex(0.0, 2.0)).imag() == Approx(0.0));
  // Interior goes to the open disk; inverse round-trips.
  const Complex z(0.37, 1.21);
  CHECK(std::abs(cayley(z)) < 1.0);
  CHECK(std::abs(cayley_inverse(cayley(z)) - z) == Approx(0.0).epsilon(1e-12));

  CHECK(cayley_boundary_angle(Boundary::infinity()) == Approx(0.0));
  CHECK(cayley_boundary_angle(Boundary::at(0.0)) == Approx(kPi));
  CHECK(cayley_boundary_angle(Boundary::at(1.0)) == Approx(1.5 * kPi));
  CHECK(cayley_boundary_angle(Boundary::at(-1.0)) == Approx(0.5 * kPi));

  CHECK(cayley_boundary_inverse(0.0) == Boundary::infinity());
  CHECK(cayley_boundary_inverse(kPi).x == Approx(0.0));
  for (double theta = 0.1; theta < 6.2; theta += 0.37) {
    const Boundary p = cayley_boundary_inverse(theta);
    CHECK(cayley_boundary_angle(p) == Approx(theta).epsilon(1e-10));
  }
  for (double x = -9.0; x <= 9.0; x += 0.618) {
    const double theta = cayley_boundary_angle(Boundary::at(x));
    const Boundary back = cayley_boundary_inverse(theta);
    REQUIRE(!back.is_infinite);
    CHECK(back.x == Approx(x).epsilon(1e-9));
  }

  // The boundary angle is consistent with the interior map: push a point of
  // H close to the real axis and compare arguments.
  const Boundary b = Boundary::at(2.0);
  const Complex near_img = cayley(Complex(2.0, 1e-9));
  double arg = std::arg(near_img);
  if (arg < 0) arg += 2.0 * kPi;
  CHECK(arg == Approx(cayley_boundary_angle(b)).epsilon(1e-6));
}

TEST_CASE("orthocircles") {
  // Through 1 and i: center 1+i, radius 1.
  const DiskCircle c = orthocircle(0.0, 0.5 * kPi);
  CHECK(c.center.real() == Approx(1.0));
  CHECK(c.center.imag() == Approx(1.0));
  CHECK(c.radius == Approx(1.0));
  // Orthogonality identity |c|^2 = 1 + r^2 on a sweep.
  for (double t1 = 0.05; t1 < 6.2; t1 += 0.71) {
    for (double dt = 0.3; dt < 2.8; dt += 0.53) {
      const DiskCircle d = orthocircle(t1, t1 + dt);
      CHECK(std::norm(d.center) == Approx(1.0 + d.radius * d.radius));
      // Both endpoints lie on the circle.
      CHECK(std::abs(Complex(std::cos(t1), std::sin(t1)) - d.center) ==
            Approx(d.radius));
      const double t2 = t1 + dt;
      CHECK(std::abs(Complex(std::cos(t2), std::sin(t2)) - d.center) ==
            Approx(d.radius));
    }
  }
  CHECK_THROWS_AS(orthocircle(0.3, 0.3), std::domain_error);
  CHECK_THROWS_AS(orthocircle(0.3, 0.3 + kPi), std::domain_error);
}

TEST_CASE("half-plane and disk geodesics agree through cayley") {
  // Map a geodesic's ideal endpoints to disk angles, build the orthocircle,
  // and check that interior points of the geodesic land on it.
  // (Geodesics through i map to diameters, which orthocircle refuses; these
  // three stay bounded circles.)
  const HLine lines[] = {HLine::semicircle(0.3, 1.0),
                         HLine::semicircle(-1.5, 0.7),
                         HLine::semicircle(2.0, 3.0)};
  for (const HLine& l : lines) {
    const auto e = l.endpoints();
    const DiskCircle d = orthocircle(cayley_boundary_angle(e[0]),
                                     cayley_boundary_angle(e[1]));
    for (double phi = 0.2; phi < kPi; phi += 0.4) {
      const Complex z(l.x0 + l.radius * std::cos(phi),
                      l.radius * std::sin(phi));
      const Complex w = cayley(z);
      CHECK(std::abs(w - d.center) == Approx(d.radius).epsilon(1e-10));
    }
  }
}
