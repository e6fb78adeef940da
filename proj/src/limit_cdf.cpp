#include "triwalk/limit_cdf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "triwalk/errors.hpp"
#include "triwalk/walk.hpp"

namespace triwalk {

namespace {

/// Singular-function evaluation through the shared context when one is
/// supplied (rational arguments only; surd evaluations solve their own
/// closed linear system and gain nothing from the cache).
Rational interro_via(const ExactNumber& a, InterroContext* ctx) {
  if (ctx != nullptr && ex_is_rational(a)) {
    return ctx->eval(std::get<Rational>(a));
  }
  return interro(a);
}

ExactNumber neg(const ExactNumber& x) { return ex_negate(x); }

/// -1 - 1/x for nonzero x.
ExactNumber neg_one_minus_recip(const ExactNumber& x) {
  return ex_add(ex_negate(ex_reciprocal(x)), Rational(-1));
}

}  // namespace

CdfValue limit_cdf(const ExactNumber& x, InterroContext* ctx) {
  const Rational half(1, 2);

  if (ex_compare(x, Rational(-2)) <= 0) {
    // (-inf, -2]: the reciprocal pulls the tail into (0, 1/2].
    return {interro_via(neg(ex_reciprocal(x)), ctx), 1};
  }
  if (ex_compare(x, Rational(-1)) <= 0) {
    // (-2, -1]
    return {Rational(1, 4) - interro_via(ex_add(neg(x), Rational(-1)), ctx) * half,
            2};
  }
  if (ex_compare(x, Rational(-1, 2)) <= 0) {
    // (-1, -1/2]
    const Rational a = interro_via(neg_one_minus_recip(x), ctx);
    const Rational b = interro_via(ex_add(x, Rational(1)), ctx);
    return {Rational(1, 4) + a * half + b * half, 3};
  }
  if (ex_compare(x, Rational(0)) <= 0) {
    // (-1/2, 0]
    return {half - interro_via(neg(x), ctx) * half, 4};
  }
  if (ex_compare(x, Rational(1)) <= 0) {
    // (0, 1]
    return {half + interro_via(x, ctx), 5};
  }
  if (ex_compare(x, Rational(2)) <= 0) {
    // (1, 2]
    return {Rational(7, 8) + interro_via(ex_add(x, Rational(-1)), ctx) * Rational(1, 4),
            6};
  }
  // (2, inf)
  return {Rational(1) - interro_via(ex_reciprocal(x), ctx) * half, 7};
}

ExtendedBoundary boundary_fold(int i, const ExtendedBoundary& p) {
  switch (i) {
    case 1:
      // Reflection across x = -1/2; infinity is an endpoint of the wall.
      if (p.is_infinite) return p;
      if (ex_compare(p.value, Rational(-1, 2)) > 0) {
        return ExtendedBoundary::at(ex_add(ex_negate(p.value), Rational(-1)));
      }
      return p;
    case 2:
      // Inversion in |z| = 1; infinity lies strictly outside and folds to 0.
      if (p.is_infinite) return ExtendedBoundary::at(Rational(0));
      if (ex_compare(p.value, Rational(1)) > 0 ||
          ex_compare(p.value, Rational(-1)) < 0) {
        return ExtendedBoundary::at(ex_reciprocal(p.value));
      }
      return p;
    case 3:
      // Reflection across x = 0; the base sits at negative real part.
      if (p.is_infinite) return p;
      if (ex_compare(p.value, Rational(0)) < 0) {
        return ExtendedBoundary::at(ex_negate(p.value));
      }
      return p;
    default:
      throw std::domain_error("boundary_fold: wall index must be 1, 2 or 3");
  }
}

StationarityCheck stationarity_check(const ExactNumber& x,
                                     InterroContext* ctx) {
  auto F = [&](const ExactNumber& t) { return limit_cdf(t, ctx).value; };

  StationarityCheck out;
  out.lhs = F(x);

  // tau_1^{-1}((-inf, x]): the fixed part contributes (-inf, x] itself when
  // x is below the wall, and the reflected part contributes [-1-x, inf)
  // (every point above the wall maps below it). At or above the wall the
  // whole line qualifies.
  if (ex_compare(x, Rational(-1, 2)) < 0) {
    out.terms[0] = out.lhs + Rational(1) - F(ex_add(ex_negate(x), Rational(-1)));
  } else {
    out.terms[0] = Rational(1);
  }

  // tau_2^{-1}((-inf, x]): the fixed interval [-1, min(1, x)], plus the
  // tails that invert into (-inf, x]. Infinity folds to 0 but carries no
  // measure.
  const int vs0 = ex_compare(x, Rational(0));
  if (ex_compare(x, Rational(-1)) < 0) {
    out.terms[1] = Rational(0);
  } else if (vs0 < 0) {
    // [x, -1] inverts into [1/x, -1]; fixed part [-1, x].
    out.terms[1] = out.lhs - F(ex_reciprocal(x));
  } else if (vs0 == 0) {
    out.terms[1] = out.lhs;  // [-1, 0] fixed, (-inf, -1) inverts into (-1, 0)
  } else if (ex_compare(x, Rational(1)) < 0) {
    // Fixed [-1, x]; (-inf, -1) inverts under 0; [1/x, inf) inverts into
    // (0, x].
    out.terms[1] = out.lhs + Rational(1) - F(ex_reciprocal(x));
  } else {
    out.terms[1] = Rational(1);
  }

  // tau_3^{-1}((-inf, x]) = [-x, x] for x >= 0, empty below.
  if (vs0 > 0) {
    out.terms[2] = out.lhs - F(ex_negate(x));
  } else {
    out.terms[2] = Rational(0);
  }

  out.rhs = (out.terms[0] + out.terms[1] + out.terms[2]) / Rational(3);
  out.holds = out.lhs == out.rhs;
  return out;
}

double max_cdf_discrepancy(const std::vector<double>& sorted_samples,
                           const Rational& lo, const Rational& hi,
                           const Rational& step) {
  if (step.sign() <= 0) {
    throw std::domain_error("max_cdf_discrepancy: step must be positive");
  }
  if (hi < lo) {
    throw std::domain_error("max_cdf_discrepancy: empty grid");
  }
  InterroContext ctx;
  double worst = 0.0;
  for (Rational x = lo; x <= hi; x += step) {
    const double exact = limit_cdf(ExactNumber(x), &ctx).value.to_double();
    const double empirical = ecdf_at(sorted_samples, x.to_double());
    worst = std::max(worst, std::abs(empirical - exact));
  }
  return worst;
}

}  // namespace triwalk
