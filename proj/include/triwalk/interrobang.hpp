#pragma once

/**
 * @file interrobang.hpp
 * @brief The interrobang function on [0, 1] and its exact inverse machinery.
 *
 * The interrobang is the unique bounded solution of the three-branch
 * self-similarity
 *     f(0) = 0,
 *     f(x) = 4^(-n) (1 - 2 f(frac(1/x)))                  for 0 < x <= 1/2,
 *            with n = floor(1/x),
 *     f(x) = 3/8 - (3/4) f(1/x - 1) - (1/2) f(1 - x)      for 1/2 < x <= 1.
 * It is continuous and strictly increasing with f(1) = 3/8, maps rationals
 * to dyadic rationals, and maps quadratic irrationals to rationals; it is
 * the boundary-limit law of the reduced walk evaluated through the
 * question-mark coordinate.
 *
 * Key design decisions:
 *  - Evaluation is exact and memoized. The recursion is well-founded because
 *    every recursive argument has strictly smaller height |num| + den, but
 *    branch three fans out into two subcalls, so evaluation walks the
 *    dependency DAG with an explicit stack (no native recursion: deep chains
 *    near height-decrease-by-one would otherwise overflow the call stack).
 *  - The memo is an LRU cache keyed by the canonical rational. The capacity
 *    default (2^20 entries) is far above any working set in this project;
 *    a floor of 4096 is enforced so pathological tiny caps cannot livelock
 *    the DAG walk.
 *  - Values at quadratic irrationals are NOT limits: ?(x) = k/n rational
 *    turns the self-similarity into an (n+1)x(n+1) exact linear system over
 *    the nodes f(?^{ -1}(i/n)), i = 0..n, assembled by accumulating
 *    equation coefficients onto an identity matrix (the equation for row i
 *    may hit column i itself, or hit one column twice; accumulation keeps
 *    those rows correct). The scaled system A*diag(1,...,1,4,...,4) is
 *    strictly diagonally dominant — checked before solving — and the value
 *    is the solution entry at index n * ?(x) = numerator of ?(x).
 *  - All searches (inverse, bracket, fraction search) walk the Stern-Brocot
 *    tree with exponential run acceleration: while the comparison keeps
 *    moving the same way, the stride doubles, then a binary search settles
 *    the exact turn. A continued-fraction term of size a costs O(log a)
 *    probes instead of a.
 */

#include <functional>
#include <list>
#include <map>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "triwalk/errors.hpp"
#include "triwalk/rational.hpp"
#include "triwalk/surd.hpp"

namespace triwalk {

/// Memoized exact evaluator. One context can (and should) be shared across
/// the many evaluations of a search: arguments along a Stern-Brocot path
/// share almost all of their recursion DAG.
class InterroContext {
 public:
  explicit InterroContext(std::size_t capacity = std::size_t{1} << 20);

  /// Exact value for rational x in [0, 1].
  Rational eval(const Rational& x);

  std::size_t cache_size() const { return items_.size(); }

 private:
  const Rational* find(const Rational& x);
  void store(const Rational& x, Rational v);

  std::size_t cap_;
  std::list<std::pair<Rational, Rational>> items_;  // front = most recent
  std::map<Rational, std::list<std::pair<Rational, Rational>>::iterator> index_;
};

/// One-shot evaluation with a fresh context.
Rational interro_rational(const Rational& x);

/// Exact value at a quadratic irrational x in (0, 1), via the linear system
/// described in the file comment.
Rational interro_surd(const QuadraticSurd& x);

/// Convenience dispatch over exact inputs (CLI surface).
Rational interro(const ExactNumber& x);

/// Closed interval of exact rationals with a certified enclosure of f(x).
struct InterroBracket {
  Rational arg_lower, arg_upper;  // arg_lower <= x <= arg_upper
  Rational lower, upper;          // f(arg_lower), f(arg_upper); upper-lower < eps
};

/// Supplies successive continued-fraction convergents of the argument.
/// Consecutive convergents must enclose the value; returning nullopt means
/// the previous convergent IS the value exactly.
using ConvergentStream = std::function<std::optional<Rational>()>;

/// An exact enclosure [lo, hi] of the argument.
struct ExactInterval {
  Rational lo, hi;
};

/// Ways to hand an argument to interro_bracket without ever passing a
/// binary float: exactly, as an exact enclosure, or as a convergent stream.
using RealArgument =
    std::variant<Rational, QuadraticSurd, ExactInterval, ConvergentStream>;

/// Certified enclosure of f at x with value-width < eps. Throws
/// ValidationError if an ExactInterval argument is too coarse to reach eps,
/// and BudgetExceededError if the probe budget runs out first.
InterroBracket interro_bracket(const RealArgument& x, const Rational& eps,
                               InterroContext* ctx = nullptr,
                               std::size_t budget = 1u << 20);

/// Interval (lo, hi) of width < eps containing f^{-1}(y), for y in
/// [0, 3/8]; degenerate (lo == hi) when the preimage is hit exactly.
std::pair<Rational, Rational> interro_inverse(const Rational& y,
                                              const Rational& eps,
                                              InterroContext* ctx = nullptr,
                                              std::size_t budget = 1u << 20);

/// The unique rational x = A/B with B <= max_den and f(x) = y exactly, or
/// nullopt with a rigorous "no such fraction" guarantee: the search stops
/// only when the open Stern-Brocot interval still containing any preimage
/// admits no denominator <= max_den (the mediant bound).
std::optional<Rational> fraction_search(const Rational& y,
                                        const Integer& max_den,
                                        InterroContext* ctx = nullptr,
                                        std::size_t budget = 1u << 22);

/// A chain lo = x_0 < x_1 < ... < x_k = hi with |f(x_{i+1}) - f(x_i)| < eps
/// for every i, built by mediant splitting (the constructive form of the
/// saturation property used by the tests).
std::vector<Rational> saturation_chain(const Rational& lo, const Rational& hi,
                                       const Rational& eps,
                                       InterroContext& ctx);

}  // namespace triwalk
