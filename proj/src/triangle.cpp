#include "triwalk/triangle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "triwalk/errors.hpp"

namespace triwalk {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleTol = 1e-9;   // wedge-angle and tangency tolerance
constexpr double kOnWallTol = 1e-9;  // "base sits on a wall" tolerance

/// An arbitrary interior sample point of a wall (used for the separation
/// checks on non-crossing pairs; the whole wall is on one side, so any
/// sample determines it). Never an ideal endpoint.
Complex wall_sample(const HLine& l) {
  if (l.kind == HLine::Kind::Vertical) return {l.x0, 1.0};
  return {l.x0, l.radius};  // top of the semicircle
}

/// Unit normal of the wall at a point of it, oriented toward the side the
/// base point is on.
Complex base_normal(const HLine& l, const Complex& at, const Complex& base) {
  Complex grad;
  if (l.kind == HLine::Kind::Vertical) {
    grad = {1.0, 0.0};
  } else {
    grad = at - Complex(l.x0, 0.0);  // radial direction (scale irrelevant)
  }
  const double s = l.side_value(base) > 0.0 ? 1.0 : -1.0;
  return s * grad / std::abs(grad);
}

PairClassification crossing_at(const HLine& a, const HLine& b,
                               const Complex& p, const HPoint& base) {
  const Complex na = base_normal(a, p, base);
  const Complex nb = base_normal(b, p, base);
  const double dot =
      std::max(-1.0, std::min(1.0, na.real() * nb.real() + na.imag() * nb.imag()));
  const double angle = kPi - std::acos(dot);
  if (!(angle > 0.0)) {
    throw ValidationError("walls cross at a degenerate wedge angle");
  }
  const double mf = kPi / angle;
  const int m = static_cast<int>(std::lround(mf));
  if (m < 2 || std::abs(angle - kPi / m) > kAngleTol) {
    std::ostringstream os;
    os << "wedge angle " << angle << " at the base side is not pi/m for an "
       << "integer m >= 2";
    throw ValidationError(os.str());
  }
  return {PairClassification::Kind::Crossing, angle, m};
}

}  // namespace

int CoxeterMatrix::operator()(int i, int j) const {
  if (i < 1 || i > 3 || j < 1 || j > 3 || i == j) {
    throw std::domain_error("CoxeterMatrix: indices must be distinct in 1..3");
  }
  const int lo = std::min(i, j), hi = std::max(i, j);
  if (lo == 1) return hi == 2 ? m12 : m13;
  return m23;
}

std::string CoxeterMatrix::to_string() const {
  const auto f = [](int m) {
    return m == kInfinity ? std::string("inf") : std::to_string(m);
  };
  return "m12=" + f(m12) + " m13=" + f(m13) + " m23=" + f(m23);
}

PairClassification classify_pair(const HLine& a, const HLine& b,
                                 const HPoint& base) {
  using Kind = HLine::Kind;
  if (a.kind == Kind::Vertical && b.kind == Kind::Vertical) {
    if (std::abs(a.x0 - b.x0) <= kAngleTol) {
      throw ValidationError("two walls coincide");
    }
    // Distinct verticals share the ideal endpoint at infinity.
    return {PairClassification::Kind::Asymptotic, 0.0,
            CoxeterMatrix::kInfinity};
  }
  if (a.kind != b.kind) {
    const HLine& v = a.kind == Kind::Vertical ? a : b;
    const HLine& s = a.kind == Kind::Vertical ? b : a;
    const double gap = std::abs(v.x0 - s.x0) - s.radius;
    if (gap > kAngleTol) {
      return {PairClassification::Kind::Disjoint, 0.0,
              CoxeterMatrix::kInfinity};
    }
    if (gap >= -kAngleTol) {
      return {PairClassification::Kind::Asymptotic, 0.0,
              CoxeterMatrix::kInfinity};
    }
    const double dx = v.x0 - s.x0;
    const Complex p(v.x0, std::sqrt(std::max(s.radius * s.radius - dx * dx, 0.0)));
    return crossing_at(a, b, p, base);
  }
  // Two semicircles.
  const double d = std::abs(a.x0 - b.x0);
  if (d <= kAngleTol && std::abs(a.radius - b.radius) <= kAngleTol) {
    throw ValidationError("two walls coincide");
  }
  const double outer_gap = d - (a.radius + b.radius);
  const double inner_gap = std::abs(a.radius - b.radius) - d;
  if (outer_gap > kAngleTol || inner_gap > kAngleTol) {
    return {PairClassification::Kind::Disjoint, 0.0, CoxeterMatrix::kInfinity};
  }
  if (outer_gap >= -kAngleTol || inner_gap >= -kAngleTol) {
    return {PairClassification::Kind::Asymptotic, 0.0,
            CoxeterMatrix::kInfinity};
  }
  const double t = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
  const double px = a.x0 + t * (b.x0 > a.x0 ? 1.0 : -1.0);
  const double h2 = a.radius * a.radius - t * t;
  const Complex p(px, std::sqrt(std::max(h2, 0.0)));
  return crossing_at(a, b, p, base);
}

TriangleConfig make_config(const std::array<HLine, 3>& lines,
                           const HPoint& base) {
  if (!(base.imag() > 0.0)) {
    throw ValidationError("base point must be interior (positive height)");
  }
  for (int i = 0; i < 3; ++i) {
    if (std::abs(lines[static_cast<size_t>(i)].side_value(base)) <= kOnWallTol) {
      throw ValidationError("base point lies on wall " + std::to_string(i + 1));
    }
  }
  TriangleConfig cfg{lines, base, {}};
  int* slot[3] = {&cfg.coxeter.m12, &cfg.coxeter.m13, &cfg.coxeter.m23};
  int k = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j, ++k) {
      const HLine& a = lines[static_cast<size_t>(i)];
      const HLine& b = lines[static_cast<size_t>(j)];
      const PairClassification pc = classify_pair(a, b, base);
      *slot[k] = pc.m;
      if (pc.kind == PairClassification::Kind::Crossing) continue;
      // Non-crossing pairs: neither wall may separate the base from the
      // other wall (each wall lies wholly on the base's side of the other).
      if (side_of(a, wall_sample(b)) != side_of(a, base) ||
          side_of(b, wall_sample(a)) != side_of(b, base)) {
        throw ValidationError("wall " + std::to_string(i + 1) + " or " +
                              std::to_string(j + 1) +
                              " separates the base point from the other");
      }
    }
  }
  return cfg;
}

TriangleConfig builtin_pgl2() {
  return make_config({HLine::vertical(-0.5), HLine::semicircle(0.0, 1.0),
                      HLine::vertical(0.0)},
                     Complex(-0.25, 1.25));
}

TriangleConfig builtin_right_angle() {
  return make_config({HLine::vertical(0.0), HLine::semicircle(0.0, 2.0),
                      HLine::semicircle(5.0, 1.0)},
                     Complex(2.5, 1.0));
}

TriangleConfig builtin_ideal() {
  const double s = std::sqrt(3.0);
  return make_config({HLine::semicircle(0.0, s),
                      HLine::semicircle(-0.5 * s, 0.5 * s),
                      HLine::semicircle(0.5 * s, 0.5 * s)},
                     Complex(0.0, 1.0));
}

int boundary_side(const HLine& line, const Boundary& p) {
  if (p.is_infinite) {
    return line.kind == HLine::Kind::Vertical ? 0 : 1;
  }
  if (line.kind == HLine::Kind::Vertical) {
    const double v = p.x - line.x0;
    return v == 0.0 ? 0 : (v > 0.0 ? 1 : -1);
  }
  const double v = (p.x - line.x0) * (p.x - line.x0) - line.radius * line.radius;
  return v == 0.0 ? 0 : (v > 0.0 ? 1 : -1);
}

int base_side(const TriangleConfig& cfg, int i) {
  return side_of(cfg.line(i), cfg.base);
}

bool is_descent(const TriangleConfig& cfg, const Isometry& g, int i) {
  const HLine wall = g.apply(cfg.line(i));
  return side_of(wall, cfg.base) != side_of(wall, g.apply(cfg.base));
}

Boundary one_way_reflect(const TriangleConfig& cfg, int i, const Boundary& p) {
  const HLine& line = cfg.line(i);
  const int s = boundary_side(line, p);
  if (s == 0 || s != base_side(cfg, i)) return p;
  return Isometry::reflection(line).apply(p);
}

DiskConfig disk_normalize(const TriangleConfig& cfg) {
  const Complex w0 = cayley(cfg.base);
  const auto move = [&w0](double theta) {
    const Complex u(std::cos(theta), std::sin(theta));
    const Complex v = (u - w0) / (Complex(1.0, 0.0) - std::conj(w0) * u);
    double t = std::arg(v);
    if (t < 0.0) t += 2.0 * kPi;
    return t;
  };
  DiskConfig out{};
  for (int i = 0; i < 3; ++i) {
    const auto e = cfg.lines[static_cast<size_t>(i)].endpoints();
    const double t1 = move(cayley_boundary_angle(e[0]));
    const double t2 = move(cayley_boundary_angle(e[1]));
    out.walls[static_cast<size_t>(i)] = orthocircle(t1, t2);
  }
  return out;
}

double disk_fold(const DiskCircle& wall, double theta) {
  theta = std::fmod(theta, 2.0 * kPi);
  if (theta < 0.0) theta += 2.0 * kPi;
  const Complex u(std::cos(theta), std::sin(theta));
  const Complex rel = u - wall.center;
  const double d2 = std::norm(rel);
  if (d2 <= wall.radius * wall.radius) return theta;  // far side: fixed
  const Complex v = wall.center + wall.radius * wall.radius * rel / d2;
  double t = std::arg(v);
  if (t < 0.0) t += 2.0 * kPi;
  return t;
}

double contraction_constant(const DiskConfig& disk) {
  const auto f = [&disk](double theta) {
    const Complex u(std::cos(theta), std::sin(theta));
    double best = std::numeric_limits<double>::infinity();
    for (const DiskCircle& w : disk.walls) {
      const double ratio2 = w.radius * w.radius / std::norm(u - w.center);
      best = std::min(best, ratio2);
    }
    return best;
  };

  constexpr int kGrid = 1 << 16;
  const double h = 2.0 * kPi / kGrid;
  double best = -1.0;
  int best_k = 0;
  for (int k = 0; k < kGrid; ++k) {
    const double v = f(k * h);
    if (v >= 1.0) {
      throw ValidationError(
          "contraction certificate failed: a boundary point lies inside or "
          "on every wall circle");
    }
    if (v > best) {
      best = v;
      best_k = k;
    }
  }
  // Golden-section refinement of the sup around the best grid point. The
  // objective is a min of smooth ridges, so refine on a window wide enough
  // to contain the true local maximum.
  double lo = (best_k - 2) * h, hi = (best_k + 2) * h;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = f(x1);
    }
  }
  const double c = std::max(best, std::max(f1, f2));
  if (!(c < 1.0)) {
    throw ValidationError("contraction certificate failed: constant >= 1");
  }
  return c;
}

}  // namespace triwalk
