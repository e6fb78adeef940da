#include "triwalk/continued_fraction.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace triwalk {

namespace {

Integer isqrt(const Integer& n) {
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

Integer fdiv(const Integer& n, const Integer& d) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return q;
}

/// floor((P + sqrt(D))/Q) for non-square D > 0 and Q != 0, exactly.
/// sqrt(D) is irrational, so P + sqrt(D) lies strictly between the
/// consecutive integers P + isqrt(D) and P + isqrt(D) + 1, and the floor of
/// the quotient only depends on that integer bracket (same argument as the
/// surd floor).
Integer floor_p_sqrtd_q(const Integer& P, const Integer& D, const Integer& Q) {
  const Integer s = isqrt(D);
  if (sgn(Q) > 0) {
    return fdiv(P + s, Q);
  }
  // (P + sqrt(D))/Q = -(P + sqrt(D))/|Q| with an irrational numerator:
  // floor(-t) = -floor(t) - 1 for irrational t.
  return -fdiv(P + s, -Q) - 1;
}

void canonicalize_finite(std::vector<Integer>& a) {
  // [..., a_k, 1] -> [..., a_k + 1]; the single-entry [1] stays.
  if (a.size() >= 2 && a.back() == 1) {
    a.pop_back();
    a.back() += 1;
  }
}

}  // namespace

std::string ContinuedFraction::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < preperiod.size(); ++i) {
    s += preperiod[i].get_str();
    s += (i == 0 ? "; " : ", ");
  }
  if (preperiod.empty()) s += "; ";
  if (!period.empty()) {
    s += "(";
    for (std::size_t i = 0; i < period.size(); ++i) {
      if (i) s += ", ";
      s += period[i].get_str();
    }
    s += ")";
  } else if (!preperiod.empty()) {
    s.erase(s.size() - 2);  // drop the trailing separator
  }
  s += "]";
  return s;
}

ContinuedFraction cf_of_rational(const Rational& x) {
  if (x.sign() < 0) {
    throw std::domain_error("cf_of_rational: negative values not representable");
  }
  ContinuedFraction cf;
  Integer p = x.num(), q = x.den();
  while (sgn(q) != 0) {
    const Integer a = fdiv(p, q);
    cf.preperiod.push_back(a);
    Integer r = p - a * q;
    p = std::move(q);
    q = std::move(r);
  }
  canonicalize_finite(cf.preperiod);
  return cf;
}

ContinuedFraction cf_of_surd(const QuadraticSurd& x) {
  if (x.sign() < 0) {
    throw std::domain_error("cf_of_surd: negative values not representable");
  }
  // Bring (a + b*sqrt(d))/c to the classical state (P + sqrt(D))/Q.
  // For b < 0 negate numerator and denominator so the root enters with a
  // plus sign: (a + b*sqrt(d))/c = (-a + |b|*sqrt(d))/(-c).
  Integer P = x.a(), Q = x.c();
  const Integer bb = x.b() * x.b();
  Integer D = bb * x.d();
  if (sgn(x.b()) < 0) {
    P = -P;
    Q = -Q;
  }
  // The iteration needs Q | D - P^2; scale by |Q| if necessary.
  if (!mpz_divisible_p(Integer(D - P * P).get_mpz_t(), Q.get_mpz_t())) {
    Integer qa = Q;
    mpz_abs(qa.get_mpz_t(), qa.get_mpz_t());
    P *= qa;
    D *= qa * qa;
    Q *= qa;
  }

  ContinuedFraction cf;
  std::vector<Integer> terms;
  std::map<std::pair<Integer, Integer>, std::size_t> seen;
  for (std::size_t k = 0;; ++k) {
    const auto state = std::make_pair(P, Q);
    if (const auto it = seen.find(state); it != seen.end()) {
      const std::size_t j = it->second;
      cf.preperiod.assign(terms.begin(), terms.begin() + j);
      cf.period.assign(terms.begin() + j, terms.end());
      return cf;
    }
    seen.emplace(state, k);
    const Integer a = floor_p_sqrtd_q(P, D, Q);
    terms.push_back(a);
    P = a * Q - P;
    Q = (D - P * P) / Q;  // exact: the divisibility invariant is preserved
    if (sgn(Q) == 0) {
      throw std::domain_error("cf_of_surd: value is rational");
    }
  }
}

ExactNumber surd_of_cf(const ContinuedFraction& cf) {
  if (cf.preperiod.empty() && cf.period.empty()) {
    throw std::domain_error("surd_of_cf: empty continued fraction");
  }
  for (std::size_t i = 0; i < cf.preperiod.size(); ++i) {
    if (cf.preperiod[i] < (i == 0 ? 0 : 1)) {
      throw std::domain_error("surd_of_cf: invalid partial quotient");
    }
  }
  for (const Integer& p : cf.period) {
    if (p < 1) throw std::domain_error("surd_of_cf: invalid period entry");
  }

  ExactNumber v = Rational(0);
  bool have_tail = false;

  if (cf.is_periodic()) {
    // The periodic tail t = [p1; p2, ..., pP, t] is the attracting fixed
    // point of the period's Moebius product M = prod [[p_k, 1], [1, 0]]:
    //   t = (alpha t + beta)/(gamma t + delta)
    // i.e. gamma t^2 + (delta - alpha) t - beta = 0, and t > 1 picks the
    // root with the positive square sign (gamma > 0 for nonempty products).
    Integer al = 1, be = 0, ga = 0, de = 1;
    for (const Integer& p : cf.period) {
      const Integer nal = al * p + be, nga = ga * p + de;
      be = al;
      de = ga;
      al = nal;
      ga = nga;
    }
    const Integer disc = (al - de) * (al - de) + 4 * be * ga;
    if (sgn(disc) <= 0 || mpz_perfect_square_p(disc.get_mpz_t())) {
      throw std::domain_error("surd_of_cf: period does not define an irrational");
    }
    v = QuadraticSurd(al - de, 1, 2 * ga, disc);
    have_tail = true;
  }

  // Fold the preperiod from the back: value = a_k + 1/rest.
  for (auto it = cf.preperiod.rbegin(); it != cf.preperiod.rend(); ++it) {
    if (have_tail) {
      v = ex_add(ex_reciprocal(v), Rational(*it));
    } else {
      v = Rational(*it);
      have_tail = true;
    }
  }
  return v;
}

std::vector<Rational> convergents(const ContinuedFraction& cf, std::size_t count) {
  std::vector<Rational> out;
  // p_k = a_k p_{k-1} + p_{k-2}, q_k likewise, seeded (p,q) = (1,0), (a0,1).
  Integer p1 = 1, q1 = 0, p0 = 0, q0 = 1;
  std::size_t k = 0;
  const auto next_term = [&](std::size_t i) -> const Integer& {
    if (i < cf.preperiod.size()) return cf.preperiod[i];
    const std::size_t j = (i - cf.preperiod.size()) % cf.period.size();
    return cf.period[j];
  };
  const std::size_t total =
      cf.is_periodic() ? count
                       : std::min(count, cf.preperiod.size());
  for (; k < total; ++k) {
    const Integer& a = next_term(k);
    const Integer pk = a * p1 + p0, qk = a * q1 + q0;
    out.emplace_back(pk, qk);
    p0 = std::move(p1);
    q0 = std::move(q1);
    p1 = pk;
    q1 = qk;
  }
  return out;
}

}  // namespace triwalk
