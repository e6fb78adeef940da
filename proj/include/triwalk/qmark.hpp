#pragma once

/**
 * @file qmark.hpp
 * @brief Minkowski question-mark function on [0, 1], exactly.
 *
 * ?(x) conjugates the continued-fraction structure of x to the binary
 * structure of ?(x): partial quotients become run lengths of bits. The three
 * exact consequences implemented here:
 *  - rationals map to dyadic rationals (finite expansion -> terminating
 *    binary), computed by the defining recursion
 *        ?(0) = 0,  ?(x) = 2^(-floor(1/x)) * (2 - ?(frac(1/x)));
 *  - quadratic irrationals map to non-dyadic rationals (eventually periodic
 *    expansion -> eventually periodic binary), computed by run-length
 *    encoding into a PeriodicBinary and summing the periodic tail;
 *  - the inverse maps dyadic rationals to rationals and non-dyadic rationals
 *    to quadratic irrationals, computed by inverting the recursion one
 *    partial quotient at a time (equivalently: reading the binary expansion
 *    one run at a time) with cycle detection for the periodic case.
 *
 * The partial-quotient extractor is the bridge the surd pipelines need:
 * given y = ?(x) in (0, 1], the first partial quotient of 1/x is the unique
 * a >= 1 with 2^(-a) < y <= 2^(1-a), because the recursion maps
 * floor(1/x) = a onto exactly that dyadic interval. (This closed form also
 * covers the dyadic boundary values y = 2^(1-a) themselves.)
 */

#include "triwalk/rational.hpp"
#include "triwalk/surd.hpp"

namespace triwalk {

struct QMarkValue {
  Rational value;
  bool is_dyadic;  // true iff value has a power-of-two denominator
};

/// ?(x) for rational x in [0, 1]; the result is dyadic. Defining recursion
/// with memoization keyed by the canonical (numerator, denominator) pair.
Rational qmark_rational(const Rational& x);

/// ?(x) for a quadratic irrational x in (0, 1); the result is a non-dyadic
/// rational.
Rational qmark_surd(const QuadraticSurd& x);

/// ?^{-1}(y) for rational y in [0, 1]: a Rational when y is dyadic, a
/// QuadraticSurd otherwise.
ExactNumber qmark_inverse(const Rational& y);

/// For y = ?(x) in (0, 1]: floor(1/x) = min{ a >= 1 : 2^(-a) < y }.
Integer first_partial_quotient_of_inverse(const Rational& y);

/// Convenience dispatch over exact inputs (CLI surface).
QMarkValue qmark(const ExactNumber& x);

}  // namespace triwalk
