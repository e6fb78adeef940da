/**
 * The limiting distribution of the reduced random walk's boundary point for
 * the arithmetic configuration (walls x = -1/2, |z| = 1, x = 0), in exact
 * rational arithmetic.
 *
 * The limit point's cumulative distribution function F is piecewise built
 * from the quartic-base singular function on [0, 1] (see interrobang.hpp)
 * through seven Moebius reparameterizations, one per branch of the real
 * line cut at -2, -1, -1/2, 0, 1, 2. Every branch value is a rational
 * combination of at most two singular-function evaluations, so F is exactly
 * computable at every rational and every real quadratic irrational.
 *
 * The law is certified, not assumed: F is the unique stationary law of the
 * one-way-fold chain, and stationarity is a finite exact identity here.
 * Each fold tau_i is 2-to-1 onto its far side (identity there, plus the
 * reflection from the base side), so the preimage of a tail set (-inf, x]
 * under each fold is a finite union of intervals with exactly computable
 * endpoints, and
 *
 *     F(x) = (1/3) [ mu(tau_1^{-1}) + mu(tau_2^{-1}) + mu(tau_3^{-1}) ]
 *
 * must hold with mu((-inf, t]) = F(t). The point at infinity is fixed by
 * tau_1 and tau_3 and sent to 0 by tau_2, but it carries measure zero (F
 * has limits 0 and 1 at the two ends), so it never contributes a term.
 *
 * Key design decisions:
 *
 *  - Branches are keyed to left-open, right-closed ranges, so each
 *    breakpoint evaluates on its lower branch; continuity across
 *    breakpoints is then an exact rational identity a test can assert,
 *    rather than a limit statement.
 *
 *  - The stationarity check evaluates interval preimages analytically (the
 *    formulas below in the source) instead of numerically folding sample
 *    points, which keeps the certificate exact and total: it holds at every
 *    exact argument or the implementation is wrong.
 *
 *  - The empirical-law comparison takes its grid as exact rationals and
 *    evaluates F exactly at each point before rounding once to double, so
 *    the discrepancy statistic inherits no branch-selection noise.
 */
#pragma once

#include <array>
#include <vector>

#include "triwalk/interrobang.hpp"
#include "triwalk/rational.hpp"
#include "triwalk/surd.hpp"

namespace triwalk {

/// An exact value of the limiting distribution function, together with the
/// branch (1..7, by breakpoints -2, -1, -1/2, 0, 1, 2) that produced it.
struct CdfValue {
  Rational value;
  int branch;
};

/// Exact F(x) for a rational or quadratic-irrational x. A shared evaluation
/// context may be passed to reuse the singular-function cache across calls.
CdfValue limit_cdf(const ExactNumber& x, InterroContext* ctx = nullptr);

/// A boundary point of the half-plane with exact coordinates: a rational or
/// quadratic irrational, or the point at infinity.
struct ExtendedBoundary {
  bool is_infinite = false;
  ExactNumber value = Rational(0);

  static ExtendedBoundary infinity() { return {true, Rational(0)}; }
  static ExtendedBoundary at(ExactNumber v) { return {false, std::move(v)}; }
};

/// Exact one-way fold tau_i (i = 1, 2, 3) of the arithmetic configuration
/// acting on an exact boundary point:
///   tau_1: x -> -1-x on (-1/2, inf), fixes the rest and infinity;
///   tau_2: x -> 1/x when |x| > 1, infinity -> 0, fixes [-1, 1];
///   tau_3: x -> |x|, fixes infinity.
ExtendedBoundary boundary_fold(int i, const ExtendedBoundary& p);

/// Exact two-sided certificate of stationarity at one point.
struct StationarityCheck {
  Rational lhs;                    ///< F(x)
  Rational rhs;                    ///< averaged fold-preimage measure
  std::array<Rational, 3> terms;   ///< mu(tau_i^{-1}((-inf, x])) per wall
  bool holds = false;              ///< lhs == rhs exactly
};

StationarityCheck stationarity_check(const ExactNumber& x,
                                     InterroContext* ctx = nullptr);

/// Largest |empirical - exact| over the rational grid lo, lo+step, ..., hi
/// (inclusive), with the empirical law given as a sorted sample.
double max_cdf_discrepancy(const std::vector<double>& sorted_samples,
                           const Rational& lo, const Rational& hi,
                           const Rational& step);

}  // namespace triwalk
