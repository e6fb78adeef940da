#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational arithmetic over arbitrary-precision integers.
 *
 * Everything downstream (question-mark and interrobang evaluation, the exact
 * linear solver, the limiting-CDF identities) depends on rationals being
 * canonical: denominator >= 1 and gcd(|num|, den) = 1, so that two equal
 * values always have equal fields and can key hash maps / memo tables.
 *
 * Key design decisions:
 *  - Backed by GMP (mpq_class); we do not reimplement bignum arithmetic.
 *    The wrapper exists to enforce canonicalization at every construction
 *    site and to host the project-specific helpers (height, floor_recip,
 *    dyadic test, mediant, string round-trip).
 *  - Construction from a zero denominator throws std::domain_error.
 *  - to_string()/from_string() use the plain "p/q" format (no spaces,
 *    denominator omitted when 1), which is also the CLI wire format.
 */

#include <compare>
#include <cstdint>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace triwalk {

using Integer = mpz_class;

class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long n) : q_(n) {}  // NOLINT: implicit by design, mirrors integers
  Rational(const Integer& n) : q_(n) {}
  Rational(const Integer& num, const Integer& den);
  Rational(long num, long den);

  static Rational from_string(const std::string& s);

  Integer num() const { return q_.get_num(); }
  Integer den() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  /// True iff the denominator is a power of two (includes integers).
  bool is_dyadic() const;
  int sign() const { return sgn(q_); }

  /// Largest integer <= value.
  Integer floor() const;
  /// Fractional part, value - floor(value), in [0, 1).
  Rational frac() const;

  Rational reciprocal() const;

  Rational operator-() const;
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t());
    return c < 0 ? std::strong_ordering::less
         : c > 0 ? std::strong_ordering::greater
                 : std::strong_ordering::equal;
  }

  std::string to_string() const;
  double to_double() const { return q_.get_d(); }

 private:
  mpq_class q_;  // invariant: always canonical (mpq arithmetic preserves it)
};

Rational abs(const Rational& x);

/// 2^e as an exact rational; e may be negative.
Rational pow2(long e);

/// Height |num| + den of a canonical rational (the recursion measure used by
/// the interrobang evaluation: every recursive argument has strictly smaller
/// height, which is what makes the three-branch recursion well-founded).
Integer height(const Rational& x);

/// For 0 < x <= 1: returns (n, f) with n = floor(1/x) >= 1 and f = 1/x - n,
/// so 1/x = n + f with f in [0, 1). Throws std::domain_error outside (0, 1].
std::pair<Integer, Rational> floor_recip(const Rational& x);

/// Stern-Brocot mediant (a.num + b.num) / (a.den + b.den). For neighboring
/// fractions this is the unique fraction of least denominator strictly
/// between them, which is what the bracketing searches rely on.
Rational mediant(const Rational& a, const Rational& b);

}  // namespace triwalk
