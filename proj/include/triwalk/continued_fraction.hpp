#pragma once

/**
 * @file continued_fraction.hpp
 * @brief Canonical (eventually periodic) continued fractions.
 *
 * A value x >= 0 is represented as [a0; a1, a2, ...] with a0 >= 0 and all
 * later partial quotients >= 1. Rationals have a finite expansion (empty
 * period); quadratic irrationals have an eventually periodic one, which is
 * stored as preperiod + primitive period.
 *
 * Canonical form:
 *  - finite expansions never end in partial quotient 1, except the
 *    single-entry expansion [1] for the value 1 (merge rule
 *    [..., a, 1] -> [..., a+1]);
 *  - the preperiod is minimal (purely periodic expansions have an empty
 *    preperiod) and the period is primitive.
 * Structural equality of canonical forms is value equality.
 *
 * Key design decisions:
 *  - cf_of_surd runs the classical (P + sqrt(D))/Q iteration with exact
 *    integer state and detects the cycle on the (P, Q) pair, which is the
 *    full recurrence state, so the first repeat gives the minimal
 *    preperiod/period directly.
 *  - surd_of_cf resolves the periodic tail as the fixed point of the
 *    period's Moebius product (a quadratic with positive discriminant) and
 *    then folds the preperiod back exactly; finite expansions fold to a
 *    Rational. This gives the exact inverse of cf_of_rational/cf_of_surd.
 *  - Negative values are rejected: the canonical form above cannot encode
 *    them, and every consumer in this project works on [0, 1] plus small
 *    positive surds.
 */

#include <string>
#include <vector>

#include "triwalk/rational.hpp"
#include "triwalk/surd.hpp"

namespace triwalk {

struct ContinuedFraction {
  std::vector<Integer> preperiod;  // first entry >= 0, later entries >= 1
  std::vector<Integer> period;     // entries >= 1; empty iff value rational

  bool is_periodic() const { return !period.empty(); }

  friend bool operator==(const ContinuedFraction&,
                         const ContinuedFraction&) = default;

  /// "[a0; a1, a2]" for finite, "[a0; a1, (p1, p2)]" with the period
  /// parenthesized for periodic expansions.
  std::string to_string() const;
};

/// Euclidean expansion of a rational x >= 0.
ContinuedFraction cf_of_rational(const Rational& x);

/// Eventually periodic expansion of a quadratic irrational x > 0.
ContinuedFraction cf_of_surd(const QuadraticSurd& x);

/// Exact value of a canonical continued fraction: Rational when the period
/// is empty, QuadraticSurd otherwise.
ExactNumber surd_of_cf(const ContinuedFraction& cf);

/// First `count` convergents p_k/q_k (fewer if the expansion is finite and
/// shorter). Consecutive convergents alternate around the value and enclose
/// it, which is what the bracketing searches consume.
std::vector<Rational> convergents(const ContinuedFraction& cf, std::size_t count);

}  // namespace triwalk
