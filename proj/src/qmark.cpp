#include "triwalk/qmark.hpp"

#include <map>
#include <stdexcept>
#include <vector>

#include "triwalk/continued_fraction.hpp"
#include "triwalk/periodic_binary.hpp"

namespace triwalk {

namespace {

Rational qmark_rec(const Rational& x, std::map<Rational, Rational>& memo) {
  if (x.is_zero()) return Rational(0);
  if (const auto it = memo.find(x); it != memo.end()) return it->second;
  const auto [n, f] = floor_recip(x);
  if (!n.fits_slong_p()) {
    throw std::domain_error("qmark_rational: result denominator out of range");
  }
  // ?(x) = 2^(-n) (2 - ?(f)); the recursion consumes one partial quotient,
  // so the depth is the continued-fraction length of x.
  const Rational v = pow2(-n.get_si()) * (Rational(2) - qmark_rec(f, memo));
  memo.emplace(x, v);
  return v;
}

}  // namespace

Rational qmark_rational(const Rational& x) {
  if (x.sign() < 0 || x > Rational(1)) {
    throw std::domain_error("qmark_rational: argument outside [0, 1]");
  }
  std::map<Rational, Rational> memo;
  return qmark_rec(x, memo);
}

Rational qmark_surd(const QuadraticSurd& x) {
  if (x.sign() < 0 || x.compare(Rational(1)) > 0) {
    throw std::domain_error("qmark_surd: argument outside (0, 1)");
  }
  const ContinuedFraction cf = cf_of_surd(x);
  // x in (0, 1) irrational: the expansion is [0; a1, a2, ...] with an
  // eventually periodic tail. Partial quotients become run lengths:
  //   a1 - 1 zeros, a2 ones, a3 zeros, ... (bit of run j is j mod 2 = 0).
  if (cf.preperiod.empty() || sgn(cf.preperiod[0]) != 0 || cf.period.empty()) {
    throw std::domain_error("qmark_surd: argument outside (0, 1)");
  }
  const std::size_t t = cf.preperiod.size() - 1;  // tail preperiod length
  const std::size_t P = cf.period.size();
  // Partial quotient a_j of the tail (j >= 1).
  const auto tail = [&](std::size_t j) -> const Integer& {
    return j <= t ? cf.preperiod[j] : cf.period[(j - t - 1) % P];
  };
  // Run 1 has length a1 - 1, which differs from later occurrences of a1, so
  // it always stays in the binary preperiod even when the CF is periodic
  // from a1 on. The bit period is one CF period if P is even and two if P is
  // odd (run polarity alternates, so an odd period returns with flipped
  // bits and only the doubled period tiles).
  const std::size_t pre_runs = std::max<std::size_t>(t, 1);
  const std::size_t per_runs = (P % 2 == 0) ? P : 2 * P;

  PeriodicBinary pb;
  const auto emit = [](std::vector<bool>& bits, const Integer& len, bool bit) {
    if (sgn(len) < 0 || !len.fits_ulong_p()) {
      throw std::domain_error("qmark_surd: run length out of range");
    }
    bits.insert(bits.end(), len.get_ui(), bit);
  };
  for (std::size_t j = 1; j <= pre_runs; ++j) {
    Integer len = tail(j);
    if (j == 1) len -= 1;
    emit(pb.preperiod, len, j % 2 == 0);
  }
  for (std::size_t j = pre_runs + 1; j <= pre_runs + per_runs; ++j) {
    emit(pb.period, tail(j), j % 2 == 0);
  }
  pb.normalize();
  return rational_of_binary(pb);
}

Integer first_partial_quotient_of_inverse(const Rational& y) {
  if (y.sign() <= 0 || y > Rational(1)) {
    throw std::domain_error(
        "first_partial_quotient_of_inverse: argument outside (0, 1]");
  }
  // min{ a >= 1 : 2^(-a) < y } = min{ a : num * 2^a > den }; since y <= 1
  // the loop body runs at least once, so a >= 1 on exit.
  Integer t = y.num(), a = 0;
  while (t <= y.den()) {
    t <<= 1;
    a += 1;
  }
  return a;
}

ExactNumber qmark_inverse(const Rational& y) {
  if (y.sign() < 0 || y > Rational(1)) {
    throw std::domain_error("qmark_inverse: argument outside [0, 1]");
  }
  if (y.is_zero()) return Rational(0);

  // Invert the recursion: with y = ?(x) in (0, 1], the first partial
  // quotient is a = min{a : 2^(-a) < y} and the rest of the expansion
  // inverts y' = 2 - 2^a y = ?(frac(1/x)). Dyadic y reaches 0 (the
  // denominator's 2-exponent strictly drops each step); non-dyadic y cycles,
  // and the first repeated remainder closes the periodic part.
  ContinuedFraction cf;
  cf.preperiod.push_back(0);
  std::vector<Integer> terms;
  std::map<Rational, std::size_t> seen;
  Rational v = y;
  while (!v.is_zero()) {
    if (const auto it = seen.find(v); it != seen.end()) {
      cf.preperiod.insert(cf.preperiod.end(), terms.begin(),
                          terms.begin() + it->second);
      cf.period.assign(terms.begin() + it->second, terms.end());
      return surd_of_cf(cf);
    }
    seen.emplace(v, terms.size());
    const Integer a = first_partial_quotient_of_inverse(v);
    terms.push_back(a);
    const long la = static_cast<long>(a.get_si());
    v = Rational(2) - pow2(la) * v;
  }
  cf.preperiod.insert(cf.preperiod.end(), terms.begin(), terms.end());
  // Canonical finite form: [..., a, 1] -> [..., a+1]; in particular
  // y = 1 produces [0; 1] -> [1], the expansion of one.
  if (cf.preperiod.size() >= 2 && cf.preperiod.back() == 1) {
    cf.preperiod.pop_back();
    cf.preperiod.back() += 1;
  }
  return surd_of_cf(cf);
}

QMarkValue qmark(const ExactNumber& x) {
  if (const auto* q = std::get_if<Rational>(&x)) {
    const Rational v = qmark_rational(*q);
    return {v, v.is_dyadic()};
  }
  const Rational v = qmark_surd(std::get<QuadraticSurd>(x));
  return {v, v.is_dyadic()};
}

}  // namespace triwalk
