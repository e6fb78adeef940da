#pragma once

/**
 * @file linalg.hpp
 * @brief Exact linear algebra over the rationals.
 *
 * The interrobang value of a quadratic irrational is obtained as one entry
 * of the exact solution of a dense rational linear system; this header
 * provides the solver and the diagonal-dominance certificate checked before
 * solving.
 *
 * Key design decisions:
 *  - Fraction-preserving Gaussian elimination. Entries stay canonical
 *    rationals throughout; no modular or floating-point shortcuts, since the
 *    results feed exact-equality tests.
 *  - Pivoting picks the first row with a nonzero entry in the pivot column.
 *    Exact arithmetic needs no magnitude-based stability pivoting, and a
 *    deterministic rule keeps runs reproducible.
 *  - A singular system throws SingularMatrixError (distinct from domain
 *    errors so callers can tell input mistakes from rank deficiency).
 */

#include <stdexcept>
#include <vector>

#include "triwalk/rational.hpp"

namespace triwalk {

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;  // row-major, rectangular

/// Solves A x = b exactly for square A. Throws SingularMatrixError if A is
/// singular and std::invalid_argument on shape mismatch.
RationalVector solve_exact(const RationalMatrix& a, const RationalVector& b);

/// Weak row diagonal dominance with at least one strict row, on |.|:
/// |a_ii| >= sum_{j != i} |a_ij| for all i, strict for some i. This is the
/// Levy-Desplanques-style certificate the surd pipeline checks on A*D before
/// trusting the assembled system.
bool is_diagonally_dominant(const RationalMatrix& a);

/// True iff every row is strictly dominant: |a_ii| > sum_{j != i} |a_ij|.
bool is_strictly_diagonally_dominant(const RationalMatrix& a);

}  // namespace triwalk
