// Reflection-triangle configurations: admissibility validation, derived
// Coxeter data, descent detection, one-way boundary folds, disk
// normalization, and the boundary contraction certificate.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "triwalk/errors.hpp"
#include "triwalk/geometry.hpp"
#include "triwalk/triangle.hpp"

using namespace triwalk;
using doctest::Approx;

namespace {
constexpr double kPi = 3.14159265358979323846;

Isometry reflect_wall(const TriangleConfig& cfg, int i) {
  return Isometry::reflection(cfg.line(i));
}
}  // namespace

TEST_CASE("builtin configurations validate with the expected Coxeter data") {
  const TriangleConfig arith = builtin_pgl2();
  CHECK(arith.coxeter.m12 == 3);
  CHECK(arith.coxeter.m23 == 2);
  CHECK(arith.coxeter.m13 == CoxeterMatrix::kInfinity);
  CHECK(arith.coxeter(2, 1) == 3);
  CHECK(arith.coxeter(3, 2) == 2);

  const TriangleConfig right = builtin_right_angle();
  CHECK(right.coxeter.m12 == 2);
  CHECK(right.coxeter.m13 == CoxeterMatrix::kInfinity);
  CHECK(right.coxeter.m23 == CoxeterMatrix::kInfinity);

  const TriangleConfig ideal = builtin_ideal();
  CHECK(ideal.coxeter.m12 == CoxeterMatrix::kInfinity);
  CHECK(ideal.coxeter.m13 == CoxeterMatrix::kInfinity);
  CHECK(ideal.coxeter.m23 == CoxeterMatrix::kInfinity);

  CHECK_THROWS_AS(arith.coxeter(1, 1), std::domain_error);
  CHECK_THROWS_AS(arith.coxeter(0, 2), std::domain_error);
}

TEST_CASE("pair classification kinds and angles") {
  const HPoint base(-0.25, 1.25);
  // Vertical wall and unit circle: the pi/3 wedge contains the base.
  const auto pc = classify_pair(HLine::vertical(-0.5),
                                HLine::semicircle(0.0, 1.0), base);
  CHECK(pc.kind == PairClassification::Kind::Crossing);
  CHECK(pc.angle == Approx(kPi / 3.0));
  CHECK(pc.m == 3);
  // Two verticals: asymptotic at infinity.
  const auto pv = classify_pair(HLine::vertical(-0.5), HLine::vertical(0.0),
                                base);
  CHECK(pv.kind == PairClassification::Kind::Asymptotic);
  // Unit circle and the vertical at 0 meet at i orthogonally.
  const auto po = classify_pair(HLine::semicircle(0.0, 1.0),
                                HLine::vertical(0.0), base);
  CHECK(po.kind == PairClassification::Kind::Crossing);
  CHECK(po.m == 2);
  // Externally tangent circles: asymptotic.
  const auto pt = classify_pair(HLine::semicircle(0.0, 1.0),
                                HLine::semicircle(2.5, 1.5), Complex(0, 3));
  CHECK(pt.kind == PairClassification::Kind::Asymptotic);
  // Internally tangent circles: asymptotic.
  const double s = std::sqrt(3.0);
  const auto pi_ = classify_pair(HLine::semicircle(0.0, s),
                                 HLine::semicircle(-0.5 * s, 0.5 * s),
                                 Complex(0.0, 1.0));
  CHECK(pi_.kind == PairClassification::Kind::Asymptotic);
  // Far apart: disjoint.
  const auto pd = classify_pair(HLine::semicircle(0.0, 1.0),
                                HLine::semicircle(9.0, 2.0), Complex(4, 1));
  CHECK(pd.kind == PairClassification::Kind::Disjoint);
  // Nested with slack: disjoint.
  const auto pn = classify_pair(HLine::semicircle(0.0, 5.0),
                                HLine::semicircle(1.0, 1.0), Complex(1, 2));
  CHECK(pn.kind == PairClassification::Kind::Disjoint);
  // Coincident walls are rejected outright.
  CHECK_THROWS_AS(classify_pair(HLine::vertical(1.0), HLine::vertical(1.0),
                                base),
                  ValidationError);
  CHECK_THROWS_AS(classify_pair(HLine::semicircle(0.0, 1.0),
                                HLine::semicircle(0.0, 1.0), base),
                  ValidationError);
}

TEST_CASE("inadmissible configurations are rejected with reasons") {
  // Base on a wall.
  CHECK_THROWS_AS(make_config({HLine::vertical(0.0), HLine::semicircle(0, 2),
                               HLine::semicircle(5, 1)},
                              Complex(0.0, 1.0)),
                  ValidationError);
  // Base below the axis.
  CHECK_THROWS_AS(make_config({HLine::vertical(0.0), HLine::semicircle(0, 2),
                               HLine::semicircle(5, 1)},
                              Complex(2.5, -1.0)),
                  ValidationError);
  // A circle centered (x_c, 0) through i crosses the vertical x = 0 at i;
  // with x_c = -cot(2pi/5) the wedge on the side of base (1, 3) measures
  // 3pi/5, which is not pi/m for any integer m, so validation must reject.
  const double a = 2.0 * kPi / 5.0;
  const double xc = -1.0 / std::tan(a);
  const double rc = std::sqrt(1.0 + xc * xc);
  CHECK_THROWS_AS(make_config({HLine::vertical(0.0),
                               HLine::semicircle(xc, rc),
                               HLine::semicircle(40.0, 1.0)},
                              Complex(1.0, 3.0)),
                  ValidationError);
  // A wall separating the base from another wall.
  CHECK_THROWS_AS(make_config({HLine::vertical(0.0), HLine::vertical(1.0),
                               HLine::vertical(2.0)},
                              Complex(0.5, 1.0)),
                  ValidationError);
  // The same three walls with the base between walls 2 and 3 still fails
  // (wall 2 separates base from wall 1).
  CHECK_THROWS_AS(make_config({HLine::vertical(0.0), HLine::vertical(1.0),
                               HLine::vertical(2.0)},
                              Complex(1.5, 1.0)),
                  ValidationError);
}

TEST_CASE("braid and involution relations of the generated group") {
  const TriangleConfig cfg = builtin_pgl2();
  const Isometry s1 = reflect_wall(cfg, 1);
  const Isometry s2 = reflect_wall(cfg, 2);
  const Isometry s3 = reflect_wall(cfg, 3);
  const std::vector<Complex> pts = {Complex(-0.25, 1.25), Complex(0.3, 0.4),
                                    Complex(-2.0, 5.0), Complex(1.7, 0.05)};
  const auto is_identity = [&pts](const Isometry& g) {
    for (const Complex& z : pts) {
      if (std::abs(g.apply(z) - z) > 1e-10) return false;
    }
    return !g.reversing();
  };
  // Involutions.
  CHECK(is_identity(s1.compose(s1)));
  CHECK(is_identity(s2.compose(s2)));
  CHECK(is_identity(s3.compose(s3)));
  // (s1 s2)^3 = 1 (m12 = 3) and (s2 s3)^2 = 1 (m23 = 2).
  const Isometry s12 = s1.compose(s2);
  CHECK(is_identity(s12.compose(s12).compose(s12)));
  const Isometry s23 = s2.compose(s3);
  CHECK(is_identity(s23.compose(s23)));
  // (s1 s3) is an infinite-order translation: far from identity.
  const Isometry s13 = s1.compose(s3);
  Isometry p = s13;
  for (int k = 1; k < 24; ++k) {
    CHECK(!is_identity(p));
    p = p.compose(s13);
  }

  // Right-angle config: (s1 s2)^2 = 1.
  const TriangleConfig rc = builtin_right_angle();
  const Isometry t12 = reflect_wall(rc, 1).compose(reflect_wall(rc, 2));
  for (const Complex& z : pts) {
    CHECK(std::abs(t12.compose(t12).apply(z) - z) < 1e-10);
  }
}

TEST_CASE("descents") {
  const TriangleConfig cfg = builtin_pgl2();
  const Isometry id;
  // No descents at the identity: no wall separates the base from itself.
  CHECK(!is_descent(cfg, id, 1));
  CHECK(!is_descent(cfg, id, 2));
  CHECK(!is_descent(cfg, id, 3));
  // After one reflection, that letter is the unique descent.
  for (int i = 1; i <= 3; ++i) {
    const Isometry g = reflect_wall(cfg, i);
    for (int j = 1; j <= 3; ++j) {
      CHECK(is_descent(cfg, g, j) == (i == j));
    }
  }
  // A reduced word's last letter is a descent; appending it again (making
  // the word non-reduced) cancels, and the cancelled element has the
  // previous letter as its descent.
  const Isometry g = reflect_wall(cfg, 1)
                         .compose(reflect_wall(cfg, 3))
                         .compose(reflect_wall(cfg, 1));
  // g = s1 s3 s1 is the reflection across x = -1; undoing it starts by
  // re-crossing the image of wall 1.
  CHECK(is_descent(cfg, g, 1));
  const Isometry h = g.compose(reflect_wall(cfg, 1));
  CHECK(is_descent(cfg, h, 3));
}

TEST_CASE("one-way boundary folds") {
  const TriangleConfig cfg = builtin_pgl2();
  // Wall 1 (x = -1/2): base side is x > -1/2; fold sends x to -1-x there.
  CHECK(one_way_reflect(cfg, 1, Boundary::at(0.3)) == Boundary::at(-1.3));
  CHECK(one_way_reflect(cfg, 1, Boundary::at(-2.0)) == Boundary::at(-2.0));
  CHECK(one_way_reflect(cfg, 1, Boundary::at(-0.5)) == Boundary::at(-0.5));
  CHECK(one_way_reflect(cfg, 1, Boundary::infinity()) ==
        Boundary::infinity());
  // Wall 2 (|z| = 1): base side is |x| > 1; fold sends x to 1/x there.
  CHECK(one_way_reflect(cfg, 2, Boundary::at(4.0)) == Boundary::at(0.25));
  CHECK(one_way_reflect(cfg, 2, Boundary::at(-4.0)) == Boundary::at(-0.25));
  CHECK(one_way_reflect(cfg, 2, Boundary::at(0.5)) == Boundary::at(0.5));
  CHECK(one_way_reflect(cfg, 2, Boundary::at(1.0)) == Boundary::at(1.0));
  CHECK(one_way_reflect(cfg, 2, Boundary::infinity()) == Boundary::at(0.0));
  // Wall 3 (x = 0): base side is x < 0; fold negates there.
  CHECK(one_way_reflect(cfg, 3, Boundary::at(-2.5)) == Boundary::at(2.5));
  CHECK(one_way_reflect(cfg, 3, Boundary::at(2.5)) == Boundary::at(2.5));
  CHECK(one_way_reflect(cfg, 3, Boundary::infinity()) ==
        Boundary::infinity());
  // tau_i is idempotent on the boundary.
  for (int i = 1; i <= 3; ++i) {
    for (double x = -6.0; x <= 6.0; x += 0.37) {
      const Boundary once = one_way_reflect(cfg, i, Boundary::at(x));
      const Boundary twice = one_way_reflect(cfg, i, once);
      CHECK(twice.is_infinite == once.is_infinite);
      if (!once.is_infinite) CHECK(twice.x == Approx(once.x));
    }
  }
}

TEST_CASE("disk normalization geometry") {
  const TriangleConfig cfg = builtin_pgl2();
  const DiskConfig disk = disk_normalize(cfg);
  for (const DiskCircle& w : disk.walls) {
    // Orthogonal to the unit circle and the origin strictly outside.
    CHECK(std::norm(w.center) == Approx(1.0 + w.radius * w.radius));
    CHECK(std::abs(w.center) > w.radius + 1e-9);
  }
  // The ideal configuration is symmetric: three congruent walls whose
  // centers are rotations of each other by 120 degrees.
  const DiskConfig ideal = disk_normalize(builtin_ideal());
  CHECK(ideal.walls[0].radius == Approx(ideal.walls[1].radius));
  CHECK(ideal.walls[1].radius == Approx(ideal.walls[2].radius));
  CHECK(std::abs(ideal.walls[0].center) ==
        Approx(std::abs(ideal.walls[1].center)));
  std::vector<double> args;
  for (const auto& w : ideal.walls) {
    double t = std::arg(w.center);
    if (t < 0) t += 2 * kPi;
    args.push_back(t);
  }
  std::sort(args.begin(), args.end());
  CHECK(args[1] - args[0] == Approx(2.0 * kPi / 3.0).epsilon(1e-9));
  CHECK(args[2] - args[1] == Approx(2.0 * kPi / 3.0).epsilon(1e-9));
  // Walls centered distance 2 with radius sqrt(3), as computed by hand.
  CHECK(std::abs(ideal.walls[0].center) == Approx(2.0));
  CHECK(ideal.walls[0].radius == Approx(std::sqrt(3.0)));
}

TEST_CASE("disk folds agree with half-plane folds") {
  const TriangleConfig cfg = builtin_pgl2();
  const DiskConfig disk = disk_normalize(cfg);
  const Complex w0 = cayley(cfg.base);
  const auto to_disk_angle = [&](const Boundary& b) {
    const Complex u = std::polar(1.0, cayley_boundary_angle(b));
    const Complex v = (u - w0) / (Complex(1.0, 0.0) - std::conj(w0) * u);
    double t = std::arg(v);
    if (t < 0) t += 2 * kPi;
    return t;
  };
  for (int i = 1; i <= 3; ++i) {
    for (double x = -5.0; x <= 5.0; x += 0.618) {
      const Boundary b = Boundary::at(x);
      const double folded_disk =
          disk_fold(disk.walls[static_cast<size_t>(i - 1)], to_disk_angle(b));
      const double disk_of_folded = to_disk_angle(one_way_reflect(cfg, i, b));
      const double diff =
          std::abs(std::remainder(folded_disk - disk_of_folded, 2.0 * kPi));
      CHECK(diff == Approx(0.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("contraction certificates") {
  const double c_arith = contraction_constant(disk_normalize(builtin_pgl2()));
  CHECK(c_arith > 0.0);
  CHECK(c_arith < 1.0);
  CHECK(c_arith == Approx(25.0 / 29.0).epsilon(1e-9));
  const double c_right =
      contraction_constant(disk_normalize(builtin_right_angle()));
  CHECK(c_right < 1.0);
  // The ideal configuration's sup is attained midway between consecutive
  // tangency points, e.g. at the boundary point for theta = 0 lying inside
  // the wall centered at 2 and equidistant from the other two walls
  // (centers 2 e^{+-2 pi i/3}): ratio^2 = 3/|1 - 2 e^{2 pi i/3}|^2 = 3/7.
  const double c_ideal = contraction_constant(disk_normalize(builtin_ideal()));
  CHECK(c_ideal == Approx(3.0 / 7.0).epsilon(1e-9));
}
