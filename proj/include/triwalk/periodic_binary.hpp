#pragma once

/**
 * @file periodic_binary.hpp
 * @brief Exact eventually periodic binary expansions on [0, 1].
 *
 * The question-mark function of a quadratic irrational is rational and is
 * most naturally produced as a binary expansion whose run lengths follow the
 * continued fraction; this type is the exact carrier for that step:
 *    value = integer_part + 0.(preperiod bits)(period bits repeating)_2.
 *
 * Canonical form (unique representation per value):
 *  - integer_part is 0 or 1, and 1 forces both bit lists empty;
 *  - the period is never all ones (0.0111... is rewritten as 0.1 by carry);
 *  - dyadic values terminate: empty period, preperiod not ending in 0;
 *  - the preperiod is minimal (its last bit differs from the period's last
 *    bit, else the boundary rotates left) and the period is primitive.
 *
 * Long division in binary_of_rational produces the canonical form directly
 * (the remainder-cycle argument); normalize() exists so hand-assembled
 * expansions in tests and the run-length encoder are forced canonical too.
 */

#include <string>
#include <vector>

#include "triwalk/rational.hpp"

namespace triwalk {

struct PeriodicBinary {
  int integer_part = 0;            // 0 or 1
  std::vector<bool> preperiod;     // bits after the binary point
  std::vector<bool> period;        // repeating tail; empty iff dyadic

  friend bool operator==(const PeriodicBinary&, const PeriodicBinary&) = default;

  /// Rewrites into canonical form (see file comment). Idempotent.
  void normalize();

  /// "0.01(10)" style; "1." for the value one, "0." for zero.
  std::string to_string() const;
};

/// Exact binary expansion of x in [0, 1].
PeriodicBinary binary_of_rational(const Rational& x);

/// Exact value of an expansion (normalizes first, accepts non-canonical
/// input): integer_part + P/2^k + Q/(2^k (2^m - 1)).
Rational rational_of_binary(const PeriodicBinary& pb);

}  // namespace triwalk
