#include "triwalk/rational.hpp"

#include <stdexcept>

namespace triwalk {

Rational::Rational(const Integer& num, const Integer& den) : q_() {
  if (sgn(den) == 0) {
    throw std::domain_error("Rational: zero denominator");
  }
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational::Rational(long num, long den)
    : Rational(Integer(num), Integer(den)) {}

Rational Rational::from_string(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(Integer(s));
    }
    return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
  } catch (const std::invalid_argument&) {
    throw std::domain_error("Rational: cannot parse '" + s + "'");
  }
}

bool Rational::is_dyadic() const {
  const Integer d = q_.get_den();
  // d >= 1 always; a power of two has a single set bit.
  return mpz_popcount(d.get_mpz_t()) == 1;
}

Integer Rational::floor() const {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num().get_mpz_t(), q_.get_den().get_mpz_t());
  return r;
}

Rational Rational::frac() const { return *this - Rational(floor()); }

Rational Rational::reciprocal() const {
  if (is_zero()) {
    throw std::domain_error("Rational: reciprocal of zero");
  }
  return Rational(q_.get_den(), q_.get_num());
}

Rational Rational::operator-() const {
  Rational r;
  r.q_ = -q_;
  return r;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) {
    throw std::domain_error("Rational: division by zero");
  }
  q_ /= o.q_;
  return *this;
}

std::string Rational::to_string() const {
  if (is_integer()) {
    return q_.get_num().get_str();
  }
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational pow2(long e) {
  Integer p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(e < 0 ? -e : e));
  return e < 0 ? Rational(Integer(1), p) : Rational(p);
}

Integer height(const Rational& x) {
  Integer a = x.num();
  mpz_abs(a.get_mpz_t(), a.get_mpz_t());
  return a + x.den();
}

std::pair<Integer, Rational> floor_recip(const Rational& x) {
  if (x.sign() <= 0 || x > Rational(1)) {
    throw std::domain_error("floor_recip: argument must lie in (0, 1]");
  }
  const Rational r = x.reciprocal();
  Integer n = r.floor();
  return {n, r - Rational(n)};
}

Rational mediant(const Rational& a, const Rational& b) {
  return Rational(a.num() + b.num(), a.den() + b.den());
}

}  // namespace triwalk
