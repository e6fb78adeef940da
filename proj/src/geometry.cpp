#include "triwalk/geometry.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "triwalk/errors.hpp"

namespace triwalk {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

std::string Boundary::to_string() const {
  if (is_infinite) return "inf";
  std::ostringstream os;
  os << x;
  return os.str();
}

HLine HLine::vertical(double x0) {
  if (!std::isfinite(x0)) throw std::domain_error("HLine: non-finite foot");
  HLine l;
  l.kind = Kind::Vertical;
  l.x0 = x0;
  l.radius = 0.0;
  return l;
}

HLine HLine::semicircle(double center, double radius) {
  if (!std::isfinite(center) || !std::isfinite(radius) || radius <= 0.0) {
    throw std::domain_error("HLine: semicircle needs a positive radius");
  }
  HLine l;
  l.kind = Kind::Semicircle;
  l.x0 = center;
  l.radius = radius;
  return l;
}

std::array<Boundary, 2> HLine::endpoints() const {
  if (kind == Kind::Vertical) {
    return {Boundary::at(x0), Boundary::infinity()};
  }
  return {Boundary::at(x0 - radius), Boundary::at(x0 + radius)};
}

double HLine::side_value(const Complex& z) const {
  if (kind == Kind::Vertical) return z.real() - x0;
  return std::norm(z - Complex(x0, 0.0)) - radius * radius;
}

std::string HLine::to_string() const {
  std::ostringstream os;
  if (kind == Kind::Vertical) {
    os << "vertical(" << x0 << ")";
  } else {
    os << "semicircle(" << x0 << ", " << radius << ")";
  }
  return os.str();
}

HLine line_through(const Boundary& p, const Boundary& q) {
  if (p == q) throw std::domain_error("line_through: equal ideal endpoints");
  if (p.is_infinite) return HLine::vertical(q.x);
  if (q.is_infinite) return HLine::vertical(p.x);
  const double c = 0.5 * (p.x + q.x);
  const double r = 0.5 * std::abs(p.x - q.x);
  return HLine::semicircle(c, r);
}

int side_of(const HLine& line, const Complex& z, double tol) {
  const double v = line.side_value(z);
  if (std::abs(v) <= tol) return 0;
  return v > 0.0 ? 1 : -1;
}

double hyperbolic_distance(const Complex& z, const Complex& w) {
  const double yz = z.imag(), yw = w.imag();
  if (!(yz > 0.0) || !(yw > 0.0)) {
    throw std::domain_error("hyperbolic_distance: points must be interior");
  }
  return std::acosh(1.0 + std::norm(z - w) / (2.0 * yz * yw));
}

Isometry::Isometry() : m_{1.0, 0.0, 0.0, 1.0}, reversing_(false) {}

Isometry::Isometry(double a, double b, double c, double d, bool reversing)
    : m_{a, b, c, d}, reversing_(reversing) {
  const double det = a * d - b * c;
  if (!std::isfinite(det) || det == 0.0) {
    throw std::domain_error("Isometry: singular coefficient matrix");
  }
  if ((det > 0.0) == reversing) {
    throw std::domain_error(
        "Isometry: determinant sign inconsistent with orientation");
  }
  normalize();
}

Isometry Isometry::reflection(const HLine& line) {
  Isometry g;
  if (line.kind == HLine::Kind::Vertical) {
    // z -> -conj(z) + 2 x0
    g.m_ = {-1.0, 2.0 * line.x0, 0.0, 1.0};
  } else {
    // z -> c + r^2/(conj(z) - c) = (c conj(z) + r^2 - c^2)/(conj(z) - c).
    // In the collapsed regime r^2 underflows and the matrix is the exact
    // rank-1 limit (the constant map to the center); it is accepted here
    // without the determinant check so that long products keep their
    // limiting behavior instead of throwing mid-walk.
    const double c = line.x0, r2 = line.radius * line.radius;
    g.m_ = {c, r2 - c * c, 1.0, -c};
  }
  g.reversing_ = true;
  g.normalize();
  return g;
}

Isometry Isometry::compose(const Isometry& other) const {
  // This matrix times the other's: the coefficients are real, so the
  // conjugation of a reversing inner map commutes past them and the flags
  // simply add mod 2.
  Isometry g;
  const auto& p = m_;
  const auto& q = other.m_;
  g.m_ = {p[0] * q[0] + p[1] * q[2], p[0] * q[1] + p[1] * q[3],
          p[2] * q[0] + p[3] * q[2], p[2] * q[1] + p[3] * q[3]};
  g.reversing_ = reversing_ != other.reversing_;
  g.normalize();
  return g;
}

Complex Isometry::apply(const Complex& z) const {
  const Complex w = reversing_ ? std::conj(z) : z;
  return (m_[0] * w + m_[1]) / (m_[2] * w + m_[3]);
}

Boundary Isometry::apply(const Boundary& p) const {
  // Conjugation fixes the boundary pointwise, so only the matrix acts.
  if (p.is_infinite) {
    if (m_[2] == 0.0) return Boundary::infinity();
    return Boundary::at(m_[0] / m_[2]);
  }
  const double den = m_[2] * p.x + m_[3];
  if (den == 0.0) return Boundary::infinity();
  return Boundary::at((m_[0] * p.x + m_[1]) / den);
}

HLine Isometry::apply(const HLine& line) const {
  const auto e = line.endpoints();
  return line_through(apply(e[0]), apply(e[1]));
}

void Isometry::normalize() {
  const double m = std::max(std::max(std::abs(m_[0]), std::abs(m_[1])),
                            std::max(std::abs(m_[2]), std::abs(m_[3])));
  if (!(m > 0.0) || !std::isfinite(m)) {
    throw InternalInvariantError("Isometry: degenerate coefficient matrix");
  }
  for (double& v : m_) v /= m;
}

std::string Isometry::to_string() const {
  std::ostringstream os;
  os << "[" << m_[0] << ", " << m_[1] << "; " << m_[2] << ", " << m_[3] << "]"
     << (reversing_ ? " reversing" : " preserving");
  return os.str();
}

Complex cayley(const Complex& z) {
  return (z - Complex(0.0, 1.0)) / (z + Complex(0.0, 1.0));
}

Complex cayley_inverse(const Complex& w) {
  return Complex(0.0, 1.0) * (Complex(1.0, 0.0) + w) /
         (Complex(1.0, 0.0) - w);
}

double cayley_boundary_angle(const Boundary& p) {
  if (p.is_infinite) return 0.0;
  // (x - i)/(x + i) = (x^2 - 1 - 2xi)/(x^2 + 1).
  double theta = std::atan2(-2.0 * p.x, p.x * p.x - 1.0);
  if (theta < 0.0) theta += 2.0 * kPi;
  return theta;
}

Boundary cayley_boundary_inverse(double theta) {
  theta = std::fmod(theta, 2.0 * kPi);
  if (theta < 0.0) theta += 2.0 * kPi;
  if (theta == 0.0) return Boundary::infinity();
  return Boundary::at(-1.0 / std::tan(0.5 * theta));
}

DiskCircle orthocircle(double theta1, double theta2) {
  // Center c with Re(conj(c) p) = 1 for both boundary points p = e^{i theta}:
  // this is exactly orthogonality to the unit circle through both points.
  const double det = std::sin(theta2 - theta1);
  if (std::abs(det) < 1e-12) {
    throw std::domain_error(
        "orthocircle: endpoints equal or antipodal (diameter)");
  }
  const double cx = (std::sin(theta2) - std::sin(theta1)) / det;
  const double cy = (std::cos(theta1) - std::cos(theta2)) / det;
  const double rr = cx * cx + cy * cy - 1.0;
  return {Complex(cx, cy), std::sqrt(std::max(rr, 0.0))};
}

}  // namespace triwalk
