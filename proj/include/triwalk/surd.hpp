#pragma once

/**
 * @file surd.hpp
 * @brief Exact arithmetic on real quadratic irrationals (a + b*sqrt(d))/c.
 *
 * Quadratic irrationals are exactly the numbers with eventually periodic
 * continued fractions, which makes them the natural exact carrier for the
 * golden-ratio/sqrt(2)-style inputs of the question-mark and interrobang
 * pipelines and for the branch dispatch of the limiting CDF.
 *
 * Canonical form: d squarefree and >= 2, c >= 1, gcd(a, b, c) = 1, b != 0.
 * A construction whose value degenerates to a rational (b = 0 after square
 * extraction) throws; callers that may legitimately produce rationals use
 * ExactNumber instead.
 *
 * Key design decisions:
 *  - All predicates (sign, floor, comparisons) are exact: they reduce to the
 *    sign of A + B*sqrt(d) with integer A, B, decided by comparing A^2 with
 *    B^2 d when the two terms have opposite signs. No floating point is
 *    consulted anywhere.
 *  - Only the operations the pipelines need are provided: affine maps with
 *    rational coefficients, reciprocal, floor/frac, comparisons against
 *    rationals and same-field surds. These all stay inside Q(sqrt(d)), so no
 *    general surd-times-surd product is needed.
 *  - Squarefree reduction of d uses trial division by small primes followed
 *    by a perfect-square check on the remainder. That certifies every d
 *    below 10^10 (a remaining square factor would need a prime > 10^5);
 *    discriminants produced by the continued-fraction machinery here are
 *    tiny, but the bound is asserted so silent misuse is impossible.
 */

#include <string>
#include <utility>
#include <variant>

#include "triwalk/rational.hpp"

namespace triwalk {

/// Exact sign of A + B*sqrt(d) for integers A, B and non-square d >= 2.
int sign_a_plus_b_sqrt(const Integer& A, const Integer& B, const Integer& d);

class QuadraticSurd {
 public:
  /// Builds (a + b*sqrt(d))/c and normalizes. Throws std::domain_error if
  /// c = 0, d < 2, or the value is rational (b = 0 or d reduces to 1).
  QuadraticSurd(Integer a, Integer b, Integer c, Integer d);

  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }
  const Integer& c() const { return c_; }
  const Integer& d() const { return d_; }

  int sign() const;
  /// Algebraic conjugate (a - b*sqrt(d))/c.
  QuadraticSurd conjugate() const;
  Integer floor() const;
  /// Fractional part; still irrational, so again a surd.
  QuadraticSurd frac() const;
  QuadraticSurd reciprocal() const;
  QuadraticSurd operator-() const;

  /// this + r and this * r (r rational, r != 0 for multiplication).
  QuadraticSurd add_rational(const Rational& r) const;
  QuadraticSurd mul_rational(const Rational& r) const;

  /// Exact three-way comparisons: negative/zero/positive as this - other.
  int compare(const Rational& r) const;
  /// Requires the same radicand d (the only case the pipelines need).
  int compare(const QuadraticSurd& o) const;

  friend bool operator==(const QuadraticSurd& x, const QuadraticSurd& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.d_ == y.d_;
  }

  double to_double() const;
  /// "(a+b*sqrt(d))/c" with the sign folded into b; c printed even when 1.
  std::string to_string() const;

 private:
  Integer a_, b_, c_, d_;
};

/// A real number represented exactly: rational or quadratic irrational.
using ExactNumber = std::variant<Rational, QuadraticSurd>;

int ex_sign(const ExactNumber& x);
ExactNumber ex_negate(const ExactNumber& x);
ExactNumber ex_reciprocal(const ExactNumber& x);
ExactNumber ex_add(const ExactNumber& x, const Rational& r);
ExactNumber ex_mul(const ExactNumber& x, const Rational& r);
Integer ex_floor(const ExactNumber& x);
/// Sign of x - r.
int ex_compare(const ExactNumber& x, const Rational& r);
double ex_to_double(const ExactNumber& x);
std::string ex_to_string(const ExactNumber& x);
bool ex_is_rational(const ExactNumber& x);

/// floor_recip for surds: for 0 < x < 1 returns (n, f) with n = floor(1/x)
/// and f = 1/x - n, the same contract as the rational overload (the
/// fractional part of a surd's reciprocal is again a surd).
std::pair<Integer, QuadraticSurd> floor_recip(const QuadraticSurd& x);

}  // namespace triwalk
