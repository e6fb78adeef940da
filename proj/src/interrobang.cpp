#include "triwalk/interrobang.hpp"

#include <algorithm>

#include "triwalk/linalg.hpp"
#include "triwalk/qmark.hpp"

namespace triwalk {

namespace {

const Rational kOne(1);
const Rational kHalf(1, 2);
const Rational kThreeEighths(3, 8);

void check_unit_interval(const Rational& x, const char* who) {
  if (x.sign() < 0 || x > kOne) {
    throw std::domain_error(std::string(who) + ": argument outside [0, 1]");
  }
}

}  // namespace

InterroContext::InterroContext(std::size_t capacity)
    : cap_(std::max<std::size_t>(capacity, 4096)) {}

const Rational* InterroContext::find(const Rational& x) {
  const auto it = index_.find(x);
  if (it == index_.end()) return nullptr;
  items_.splice(items_.begin(), items_, it->second);  // touch
  return &it->second->second;
}

void InterroContext::store(const Rational& x, Rational v) {
  items_.emplace_front(x, std::move(v));
  index_.emplace(x, items_.begin());
  while (items_.size() > cap_) {
    index_.erase(items_.back().first);
    items_.pop_back();
  }
}

Rational InterroContext::eval(const Rational& x0) {
  check_unit_interval(x0, "interrobang");

  // Explicit-stack walk of the recursion DAG: a node is combined once its
  // children are memoized; heights strictly decrease downward, so this
  // terminates, and sibling subtrees share memo entries.
  std::vector<Rational> work{x0};
  while (!work.empty()) {
    const Rational x = work.back();
    if (find(x) != nullptr) {
      work.pop_back();
      continue;
    }
    if (x.is_zero()) {
      work.pop_back();
      store(x, Rational(0));
      continue;
    }
    if (x <= kHalf) {
      const auto [n, f] = floor_recip(x);
      if (!n.fits_slong_p() || n.get_si() > (1L << 30)) {
        throw std::domain_error("interrobang: result denominator out of range");
      }
      if (const Rational* vf = find(f)) {
        // f(x) = 4^(-n) (1 - 2 f(frac(1/x)))
        work.pop_back();
        store(x, pow2(-2 * n.get_si()) * (kOne - Rational(2) * *vf));
      } else {
        work.push_back(f);
      }
    } else {
      const Rational c1 = x.reciprocal() - kOne;  // 1/x - 1, in [0, 1)
      const Rational c2 = kOne - x;               // in [0, 1/2)
      const Rational* v1 = find(c1);
      const Rational* v2 = find(c2);
      if (v1 != nullptr && v2 != nullptr) {
        // f(x) = 3/8 - (3/4) f(1/x - 1) - (1/2) f(1 - x)
        const Rational v =
            kThreeEighths - Rational(3, 4) * *v1 - kHalf * *v2;
        work.pop_back();
        store(x, v);
      } else {
        if (v1 == nullptr) work.push_back(c1);
        if (v2 == nullptr && !(c2 == c1)) work.push_back(c2);
      }
    }
  }
  const Rational* v = find(x0);
  if (v == nullptr) {
    throw InternalInvariantError("interrobang: root evicted mid-evaluation");
  }
  return *v;
}

Rational interro_rational(const Rational& x) {
  InterroContext ctx;
  return ctx.eval(x);
}

Rational interro_surd(const QuadraticSurd& x) {
  if (x.sign() <= 0 || x.compare(kOne) >= 0) {
    throw std::domain_error("interro_surd: argument outside (0, 1)");
  }
  // ?(x) = k/n rational; the self-similarity closes on the finite node set
  // x_i = ?^{-1}(i/n), i = 0..n, whose ?-values are i/n: applying the
  // recursion to x_i lands on nodes again, giving one linear equation per i.
  const Rational qx = qmark_surd(x);
  const Integer nI = qx.den(), kI = qx.num();
  if (!nI.fits_ulong_p() || nI > 100000) {
    throw std::domain_error("interro_surd: linear system too large");
  }
  const std::size_t n = nI.get_ui();
  const std::size_t k = kI.get_ui();

  // Start from the identity and accumulate: rows may hit their own diagonal
  // (2n - 2^a i = i) or hit one column twice (i = n sends both terms to 0).
  RationalMatrix a(n + 1, RationalVector(n + 1, Rational(0)));
  RationalVector b(n + 1, Rational(0));
  for (std::size_t i = 0; i <= n; ++i) a[i][i] = kOne;

  for (std::size_t i = 1; i <= n; ++i) {
    if (2 * i <= n) {
      // x_i <= 1/2 (since ?(x_i) = i/n <= 1/2 = ?(1/2)): branch two with
      // a_i = floor(1/x_i), recoverable from the ?-value alone.
      const Integer ai =
          first_partial_quotient_of_inverse(Rational(Integer(i), nI));
      if (!ai.fits_ulong_p() || ai < 2) {
        throw InternalInvariantError("interro_surd: bad partial quotient");
      }
      // frac(1/x_i) has ?-value 2 - 2^{a_i} i/n = (2n - 2^{a_i} i)/n.
      Integer jI = 2 * nI - (Integer(1) << ai.get_ui()) * Integer(i);
      if (sgn(jI) < 0 || jI > nI) {
        throw InternalInvariantError("interro_surd: node index out of range");
      }
      const std::size_t j = jI.get_ui();
      const Rational q = pow2(-2 * static_cast<long>(ai.get_ui()));  // 4^{-a}
      a[i][j] += Rational(2) * q;
      b[i] = q;
    } else {
      // x_i > 1/2: branch three; 1/x_i - 1 has ?-value (2n - 2i)/n and
      // 1 - x_i has ?-value (n - i)/n.
      a[i][2 * n - 2 * i] += Rational(3, 4);
      a[i][n - i] += kHalf;
      b[i] = kThreeEighths;
    }
  }

  // Certificate: A * diag(D) strictly diagonally dominant, D_i = 1 for
  // i <= n/2 and 4 otherwise; guarantees a unique solution.
  RationalMatrix ad = a;
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= n; ++j) {
      if (2 * j > n) ad[i][j] *= Rational(4);
    }
  }
  if (!is_strictly_diagonally_dominant(ad)) {
    throw InternalInvariantError("interro_surd: system not diagonally dominant");
  }

  const RationalVector v = solve_exact(a, b);
  if (!v[0].is_zero() || v[n] != kThreeEighths) {
    throw InternalInvariantError("interro_surd: boundary values wrong");
  }
  // The value sits at node index n * ?(x) = k.
  return v[k];
}

Rational interro(const ExactNumber& x) {
  if (ex_is_rational(x)) return interro_rational(std::get<Rational>(x));
  return interro_surd(std::get<QuadraticSurd>(x));
}

namespace {

/// Weighted mediant (lo.num + k hi.num)/(lo.den + k hi.den): the vertex
/// reached from (lo, hi) by k successive moves toward hi.
Rational mediant_k(const Rational& toward_end, const Rational& from,
                   const Integer& k) {
  return Rational(from.num() + k * toward_end.num(),
                  from.den() + k * toward_end.den());
}

struct Probe {
  std::size_t left;
  void spend(const char* who) {
    if (left == 0) throw BudgetExceededError(std::string(who) + ": probe budget exhausted");
    --left;
  }
};

enum class MoveResult { Hit, Moved, Stuck };

/// One accelerated Stern-Brocot move. cmp(m) = -1/0/+1 for target </=/> m
/// (nullopt: cannot decide = enclosure argument too coarse). On Hit both
/// bounds equal the target; on Moved one bound advanced past a full
/// same-direction run.
template <typename Cmp>
MoveResult sb_move(Rational& lo, Rational& hi, Cmp&& cmp, Probe& probe,
                   const char* who) {
  probe.spend(who);
  const std::optional<int> c0 = cmp(mediant(lo, hi));
  if (!c0) return MoveResult::Stuck;
  if (*c0 == 0) {
    lo = hi = mediant(lo, hi);
    return MoveResult::Hit;
  }
  const bool rightward = *c0 > 0;
  const Rational& end = rightward ? hi : lo;
  const Rational& from = rightward ? lo : hi;
  // The weak certificates used to move the bounds allow an endpoint to
  // coincide with the target (e.g. a convergent stream that pins on its
  // final, exact term after that term already served as a bound). Every
  // interior probe then points the same way and stride doubling would never
  // overshoot, so settle the endpoint the run is heading toward first.
  probe.spend(who);
  const std::optional<int> ce = cmp(end);
  if (!ce) return MoveResult::Stuck;
  if (*ce == 0) {
    lo = hi = end;
    return MoveResult::Hit;
  }
  // Stride doubling: find k_hi with the target strictly before the k_hi-th
  // step; every probe either extends the run or brackets the turn.
  Integer k_lo = 1, k_hi = 2;
  for (;;) {
    probe.spend(who);
    const std::optional<int> c = cmp(mediant_k(end, from, k_hi));
    if (!c) return MoveResult::Stuck;
    if (*c == 0) {
      lo = hi = mediant_k(end, from, k_hi);
      return MoveResult::Hit;
    }
    if ((*c > 0) != rightward) break;  // overshot: turn lies in (k_lo, k_hi)
    k_lo = k_hi;
    k_hi <<= 1;
  }
  while (k_hi - k_lo > 1) {
    const Integer mid = (k_lo + k_hi) / 2;
    probe.spend(who);
    const std::optional<int> c = cmp(mediant_k(end, from, mid));
    if (!c) return MoveResult::Stuck;
    if (*c == 0) {
      lo = hi = mediant_k(end, from, mid);
      return MoveResult::Hit;
    }
    ((*c > 0) == rightward ? k_lo : k_hi) = mid;
  }
  // k_lo steps confirmed: the target lies strictly between the k_lo-th and
  // k_hi-th vertices, so the k_lo-th becomes the new near bound.
  if (rightward) {
    lo = mediant_k(end, from, k_lo);
  } else {
    hi = mediant_k(end, from, k_lo);
  }
  return MoveResult::Moved;
}

/// Exact comparison oracle for a RealArgument; see interro_bracket.
class ArgOracle {
 public:
  explicit ArgOracle(const RealArgument& arg, Probe& probe) : probe_(probe) {
    if (const auto* r = std::get_if<Rational>(&arg)) {
      check_unit_interval(*r, "interro_bracket");
      lo_ = hi_ = *r;
      pinned_ = true;
    } else if (const auto* s = std::get_if<QuadraticSurd>(&arg)) {
      if (s->sign() < 0 || s->compare(kOne) > 0) {
        throw std::domain_error("interro_bracket: argument outside [0, 1]");
      }
      surd_ = *s;
    } else if (const auto* iv = std::get_if<ExactInterval>(&arg)) {
      if (iv->lo > iv->hi) {
        throw std::domain_error("interro_bracket: empty interval");
      }
      check_unit_interval(iv->lo, "interro_bracket");
      check_unit_interval(iv->hi, "interro_bracket");
      lo_ = iv->lo;
      hi_ = iv->hi;
      pinned_ = (lo_ == hi_);
      frozen_ = true;
    } else {
      stream_ = std::get<ConvergentStream>(arg);
      pull();  // need at least one convergent to have any enclosure
      pull();
    }
  }

  /// Weak trichotomy against the target x*: +1 certifies m <= x* (safe as a
  /// new lower bound), -1 certifies m >= x*, 0 means exactly equal; nullopt
  /// if the argument enclosure cannot separate from m and cannot be refined
  /// further.
  std::optional<int> compare(const Rational& m) {
    if (surd_) return surd_->compare(m);
    for (;;) {
      if (pinned_) {
        return lo_ < m ? -1 : (lo_ == m ? 0 : 1);
      }
      // A frozen interval's endpoints are attainable, so only weak bounds
      // can be certified; a live stream enclosure narrows on demand.
      if (frozen_) {
        if (m <= lo_) return 1;
        if (m >= hi_) return -1;
        return std::nullopt;
      }
      if (m <= lo_) return 1;
      if (m >= hi_) return -1;
      pull();
    }
  }

  /// Best current enclosure of the argument (used for domain checks).
  std::pair<Rational, Rational> enclosure() const { return {lo_, hi_}; }

 private:
  void pull() {
    probe_.spend("interro_bracket");
    std::optional<Rational> c = stream_();
    if (!c) {
      if (!have_last_) {
        throw std::domain_error("interro_bracket: stream produced no convergents");
      }
      // Exhausted: the last convergent is the exact value.
      lo_ = hi_ = last_;
      pinned_ = true;
      return;
    }
    check_unit_interval(*c, "interro_bracket(stream)");
    if (have_last_) {
      lo_ = std::min(last_, *c);
      hi_ = std::max(last_, *c);
    } else {
      lo_ = Rational(0);
      hi_ = kOne;
    }
    last_ = *c;
    have_last_ = true;
  }

  Probe& probe_;
  std::optional<QuadraticSurd> surd_;
  ConvergentStream stream_;
  Rational lo_{0}, hi_{1}, last_{0};
  bool have_last_ = false;
  bool pinned_ = false;  // value known exactly (== lo_ == hi_, or surd_)
  bool frozen_ = false;  // interval that cannot be refined
};

}  // namespace

InterroBracket interro_bracket(const RealArgument& x, const Rational& eps,
                               InterroContext* ctx, std::size_t budget) {
  if (eps.sign() <= 0) {
    throw std::domain_error("interro_bracket: eps must be positive");
  }
  InterroContext local;
  InterroContext& c = ctx ? *ctx : local;
  Probe probe{budget};
  ArgOracle oracle(x, probe);

  Rational lo(0), hi(1);
  const auto cmp = [&](const Rational& m) { return oracle.compare(m); };
  for (;;) {
    const Rational flo = c.eval(lo), fhi = c.eval(hi);
    if (fhi - flo < eps) return {lo, hi, flo, fhi};
    switch (sb_move(lo, hi, cmp, probe, "interro_bracket")) {
      case MoveResult::Hit: {
        const Rational v = c.eval(lo);
        return {lo, hi, v, v};
      }
      case MoveResult::Moved:
        break;
      case MoveResult::Stuck:
        throw ValidationError(
            "interro_bracket: argument enclosure too coarse for eps");
    }
  }
}

std::pair<Rational, Rational> interro_inverse(const Rational& y,
                                              const Rational& eps,
                                              InterroContext* ctx,
                                              std::size_t budget) {
  if (y.sign() < 0 || y > kThreeEighths) {
    throw std::domain_error("interro_inverse: value outside [0, 3/8]");
  }
  if (eps.sign() <= 0) {
    throw std::domain_error("interro_inverse: eps must be positive");
  }
  if (y.is_zero()) return {Rational(0), Rational(0)};
  if (y == kThreeEighths) return {kOne, kOne};

  InterroContext local;
  InterroContext& c = ctx ? *ctx : local;
  Probe probe{budget};
  // Descend toward the unique preimage: f is strictly increasing, so the
  // target lies right of m iff f(m) < y.
  const auto cmp = [&](const Rational& m) -> std::optional<int> {
    const Rational v = c.eval(m);
    return v < y ? 1 : (v == y ? 0 : -1);
  };
  Rational lo(0), hi(1);
  while (hi - lo >= eps) {
    if (sb_move(lo, hi, cmp, probe, "interro_inverse") == MoveResult::Hit) {
      break;
    }
  }
  return {lo, hi};
}

std::optional<Rational> fraction_search(const Rational& y,
                                        const Integer& max_den,
                                        InterroContext* ctx,
                                        std::size_t budget) {
  if (max_den < 1) {
    throw std::domain_error("fraction_search: max_den must be >= 1");
  }
  if (y.sign() < 0 || y > kThreeEighths) return std::nullopt;
  if (y.is_zero()) return Rational(0);
  if (y == kThreeEighths) return kOne;

  InterroContext local;
  InterroContext& c = ctx ? *ctx : local;
  Probe probe{budget};
  const auto cmp = [&](const Rational& m) -> std::optional<int> {
    const Rational v = c.eval(m);
    return v < y ? 1 : (v == y ? 0 : -1);
  };
  Rational lo(0), hi(1);
  // The mediant has the least denominator strictly inside (lo, hi); once it
  // exceeds max_den, no admissible fraction remains, and both endpoints
  // were already ruled out (probed, or the y = f(0), f(1) cases above).
  while (lo.den() + hi.den() <= max_den) {
    if (sb_move(lo, hi, cmp, probe, "fraction_search") == MoveResult::Hit) {
      return lo.den() <= max_den ? std::optional<Rational>(lo) : std::nullopt;
    }
  }
  return std::nullopt;
}

std::vector<Rational> saturation_chain(const Rational& lo, const Rational& hi,
                                       const Rational& eps,
                                       InterroContext& ctx) {
  if (lo > hi) throw std::domain_error("saturation_chain: lo > hi");
  check_unit_interval(lo, "saturation_chain");
  check_unit_interval(hi, "saturation_chain");
  if (eps.sign() <= 0) {
    throw std::domain_error("saturation_chain: eps must be positive");
  }
  // Depth-first mediant splitting; segments are emitted left to right once
  // their f-increment drops below eps, so the result is the full chain.
  std::vector<Rational> chain{lo};
  std::vector<std::pair<Rational, Rational>> work{{lo, hi}};
  while (!work.empty()) {
    const auto [a, b] = work.back();
    work.pop_back();
    if (::triwalk::abs(ctx.eval(b) - ctx.eval(a)) < eps) {
      chain.push_back(b);
      continue;
    }
    const Rational m = mediant(a, b);
    work.emplace_back(m, b);  // pushed first: processed after (a, m)
    work.emplace_back(a, m);
  }
  return chain;
}

}  // namespace triwalk
