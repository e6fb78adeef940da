#include "triwalk/linalg.hpp"

#include <utility>

namespace triwalk {

namespace {

void check_square(const RationalMatrix& a, std::size_t rows) {
  if (a.size() != rows) throw std::invalid_argument("solve_exact: not square");
  for (const auto& row : a) {
    if (row.size() != rows) {
      throw std::invalid_argument("solve_exact: ragged or non-square matrix");
    }
  }
}

}  // namespace

RationalVector solve_exact(const RationalMatrix& a, const RationalVector& b) {
  const std::size_t n = b.size();
  check_square(a, n);

  // Augmented system [A | b], eliminated in place.
  RationalMatrix m = a;
  for (std::size_t i = 0; i < n; ++i) m[i].push_back(b[i]);

  for (std::size_t col = 0; col < n; ++col) {
    // First nonzero pivot in column order (deterministic; exact arithmetic
    // does not need magnitude pivoting).
    std::size_t piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) throw SingularMatrixError("solve_exact: singular matrix");
    if (piv != col) std::swap(m[piv], m[col]);

    const Rational inv = m[col][col].reciprocal();
    for (std::size_t j = col; j <= n; ++j) m[col][j] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      const Rational f = m[r][col];
      for (std::size_t j = col; j <= n; ++j) m[r][j] -= f * m[col][j];
    }
  }

  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = std::move(m[i][n]);
  return x;
}

namespace {

/// -1: row violates weak dominance; 0: weakly dominant (tie); 1: strict.
int row_dominance(const RationalMatrix& a, std::size_t i) {
  Rational off(0);
  for (std::size_t j = 0; j < a[i].size(); ++j) {
    if (j != i) off += abs(a[i][j]);
  }
  const Rational diag = abs(a[i][i]);
  if (diag < off) return -1;
  return diag > off ? 1 : 0;
}

}  // namespace

bool is_diagonally_dominant(const RationalMatrix& a) {
  bool any_strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int d = row_dominance(a, i);
    if (d < 0) return false;
    if (d > 0) any_strict = true;
  }
  return any_strict || a.empty();
}

bool is_strictly_diagonally_dominant(const RationalMatrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (row_dominance(a, i) <= 0) return false;
  }
  return true;
}

}  // namespace triwalk
