#include "triwalk/surd.hpp"

#include <cmath>
#include <stdexcept>

namespace triwalk {

namespace {

/// Removes every square prime factor p^2 (p <= 10^5) from d, multiplying the
/// extracted factor into scale. If the remainder is itself a perfect square
/// it is extracted wholesale. Values with a square factor p^2 for some prime
/// p > 10^5 would need d > 10^10; we refuse such d rather than silently
/// accepting a non-canonical radicand.
Integer reduce_squarefree(Integer d, Integer& scale) {
  scale = 1;
  for (unsigned long p = 2; Integer(p) * p <= d; p == 2 ? p = 3 : p += 2) {
    const Integer p2 = Integer(p) * p;
    while (mpz_divisible_p(d.get_mpz_t(), p2.get_mpz_t())) {
      d /= p2;
      scale *= p;
    }
    if (p > 100000UL) {
      if (d > Integer("10000000000")) {
        throw std::domain_error(
            "QuadraticSurd: radicand too large to certify squarefree");
      }
      break;
    }
  }
  if (mpz_perfect_square_p(d.get_mpz_t())) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), d.get_mpz_t());
    scale *= r;
    d = 1;
  }
  return d;
}

Integer gcd3(const Integer& x, const Integer& y, const Integer& z) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
  return g;
}

Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Integer fdiv(const Integer& n, const Integer& d) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

}  // namespace

int sign_a_plus_b_sqrt(const Integer& A, const Integer& B, const Integer& d) {
  const int sa = sgn(A), sb = sgn(B);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: the sign is decided by comparing A^2 against B^2 d.
  // Equality is impossible when d is not a perfect square and B != 0.
  const int c = cmp(A * A, B * B * d);
  return c > 0 ? sa : sb;
}

QuadraticSurd::QuadraticSurd(Integer a, Integer b, Integer c, Integer d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (sgn(c_) == 0) throw std::domain_error("QuadraticSurd: zero denominator");
  if (d_ < 2) throw std::domain_error("QuadraticSurd: radicand must be >= 2");
  Integer scale;
  d_ = reduce_squarefree(d_, scale);
  b_ *= scale;
  if (sgn(b_) == 0 || d_ == 1) {
    throw std::domain_error("QuadraticSurd: value is rational");
  }
  if (sgn(c_) < 0) {
    a_ = -a_;
    b_ = -b_;
    c_ = -c_;
  }
  const Integer g = gcd3(a_, b_, c_);
  if (g > 1) {
    a_ /= g;
    b_ /= g;
    c_ /= g;
  }
}

int QuadraticSurd::sign() const { return sign_a_plus_b_sqrt(a_, b_, d_); }

QuadraticSurd QuadraticSurd::conjugate() const {
  return QuadraticSurd(a_, -b_, c_, d_);
}

Integer QuadraticSurd::floor() const {
  // floor((a + b*sqrt(d))/c) with c >= 1. Let g = b*sqrt(d) (irrational).
  // floor(g) = isqrt(b^2 d) for b > 0 and -isqrt(b^2 d) - 1 for b < 0;
  // since g is irrational, a + g lies strictly between consecutive integers
  // a + floor(g) and a + floor(g) + 1, and no integer sits strictly inside
  // that open unit interval, so floor((a + g)/c) = floor((a + floor(g))/c).
  const Integer s = isqrt(b_ * b_ * d_);
  const Integer fg = sgn(b_) > 0 ? s : -s - 1;
  return fdiv(a_ + fg, c_);
}

QuadraticSurd QuadraticSurd::frac() const {
  return add_rational(Rational(-floor()));
}

QuadraticSurd QuadraticSurd::reciprocal() const {
  // c/(a + b*sqrt(d)) = c(a - b*sqrt(d))/(a^2 - b^2 d); the norm a^2 - b^2 d
  // is nonzero because the value is irrational.
  const Integer norm = a_ * a_ - b_ * b_ * d_;
  return QuadraticSurd(c_ * a_, -c_ * b_, norm, d_);
}

QuadraticSurd QuadraticSurd::operator-() const {
  return QuadraticSurd(-a_, -b_, c_, d_);
}

QuadraticSurd QuadraticSurd::add_rational(const Rational& r) const {
  // (a + b sqrt d)/c + p/q = ((aq + pc) + bq sqrt d)/(cq)
  const Integer p = r.num(), q = r.den();
  return QuadraticSurd(a_ * q + p * c_, b_ * q, c_ * q, d_);
}

QuadraticSurd QuadraticSurd::mul_rational(const Rational& r) const {
  if (r.is_zero()) {
    throw std::domain_error("QuadraticSurd: multiplication by zero is rational");
  }
  return QuadraticSurd(a_ * r.num(), b_ * r.num(), c_ * r.den(), d_);
}

int QuadraticSurd::compare(const Rational& r) const {
  // sign of (a + b sqrt d)/c - p/q = sign of (aq - pc) + bq sqrt d (cq > 0).
  return sign_a_plus_b_sqrt(a_ * r.den() - r.num() * c_, b_ * r.den(), d_);
}

int QuadraticSurd::compare(const QuadraticSurd& o) const {
  if (d_ != o.d_) {
    throw std::domain_error("QuadraticSurd: comparison across different fields");
  }
  // Difference lies in Q(sqrt(d)): ((a1 c2 - a2 c1) + (b1 c2 - b2 c1) sqrt d)
  // over c1 c2 > 0.
  return sign_a_plus_b_sqrt(a_ * o.c_ - o.a_ * c_, b_ * o.c_ - o.b_ * c_, d_);
}

double QuadraticSurd::to_double() const {
  return (a_.get_d() + b_.get_d() * std::sqrt(d_.get_d())) / c_.get_d();
}

std::string QuadraticSurd::to_string() const {
  std::string s = "(" + a_.get_str();
  s += (sgn(b_) < 0 ? "-" : "+");
  Integer babs = b_;
  mpz_abs(babs.get_mpz_t(), babs.get_mpz_t());
  if (babs != 1) s += babs.get_str() + "*";
  s += "sqrt(" + d_.get_str() + "))/" + c_.get_str();
  return s;
}

int ex_sign(const ExactNumber& x) {
  return std::visit([](const auto& v) { return v.sign(); }, x);
}

ExactNumber ex_negate(const ExactNumber& x) {
  return std::visit([](const auto& v) { return ExactNumber(-v); }, x);
}

ExactNumber ex_reciprocal(const ExactNumber& x) {
  return std::visit([](const auto& v) { return ExactNumber(v.reciprocal()); }, x);
}

ExactNumber ex_add(const ExactNumber& x, const Rational& r) {
  if (const auto* q = std::get_if<Rational>(&x)) return *q + r;
  return std::get<QuadraticSurd>(x).add_rational(r);
}

ExactNumber ex_mul(const ExactNumber& x, const Rational& r) {
  if (const auto* q = std::get_if<Rational>(&x)) return *q * r;
  if (r.is_zero()) return Rational(0);
  return std::get<QuadraticSurd>(x).mul_rational(r);
}

Integer ex_floor(const ExactNumber& x) {
  return std::visit([](const auto& v) { return v.floor(); }, x);
}

int ex_compare(const ExactNumber& x, const Rational& r) {
  if (const auto* q = std::get_if<Rational>(&x)) {
    return *q < r ? -1 : (*q == r ? 0 : 1);
  }
  return std::get<QuadraticSurd>(x).compare(r);
}

double ex_to_double(const ExactNumber& x) {
  return std::visit([](const auto& v) { return v.to_double(); }, x);
}

std::string ex_to_string(const ExactNumber& x) {
  return std::visit([](const auto& v) { return v.to_string(); }, x);
}

bool ex_is_rational(const ExactNumber& x) {
  return std::holds_alternative<Rational>(x);
}

std::pair<Integer, QuadraticSurd> floor_recip(const QuadraticSurd& x) {
  if (x.sign() <= 0 || x.compare(Rational(1)) >= 0) {
    throw std::domain_error("floor_recip: argument must lie in (0, 1)");
  }
  const QuadraticSurd r = x.reciprocal();
  Integer n = r.floor();
  return {n, r.add_rational(Rational(-n))};
}

}  // namespace triwalk
