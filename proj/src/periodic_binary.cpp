#include "triwalk/periodic_binary.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace triwalk {

namespace {

bool all_of_bit(const std::vector<bool>& v, bool b) {
  return std::all_of(v.begin(), v.end(), [b](bool x) { return x == b; });
}

/// Adds 1 to the last place of the fractional bit string, propagating the
/// carry left; returns true if the carry leaves the fractional part.
bool increment_bits(std::vector<bool>& bits) {
  for (auto it = bits.rbegin(); it != bits.rend(); ++it) {
    if (!*it) {
      *it = true;
      return false;
    }
    *it = false;
  }
  return true;
}

Integer bits_to_integer(const std::vector<bool>& bits) {
  Integer v = 0;
  for (const bool b : bits) {
    v <<= 1;
    if (b) v += 1;
  }
  return v;
}

}  // namespace

void PeriodicBinary::normalize() {
  if (!period.empty()) {
    if (all_of_bit(period, false)) {
      // A repeating zero tail is just a terminating expansion.
      period.clear();
    } else if (all_of_bit(period, true)) {
      // 0.x0111... = 0.x1: carry one into the preperiod.
      period.clear();
      if (increment_bits(preperiod)) integer_part += 1;
    }
  }
  if (!period.empty()) {
    // Primitive period: the smallest divisor-length prefix that tiles it.
    for (std::size_t len = 1; len < period.size(); ++len) {
      if (period.size() % len != 0) continue;
      bool tiles = true;
      for (std::size_t i = len; i < period.size() && tiles; ++i) {
        tiles = period[i] == period[i % len];
      }
      if (tiles) {
        period.resize(len);
        break;
      }
    }
    // Minimal preperiod: if the last preperiod bit equals the last period
    // bit, the period boundary can rotate one place left without changing
    // the bit stream.
    while (!preperiod.empty() && preperiod.back() == period.back()) {
      period.insert(period.begin(), period.back());
      period.pop_back();
      preperiod.pop_back();
    }
  } else {
    while (!preperiod.empty() && !preperiod.back()) preperiod.pop_back();
  }
  if (integer_part < 0 || integer_part > 1 ||
      (integer_part == 1 && !(preperiod.empty() && period.empty()))) {
    throw std::domain_error("PeriodicBinary: value outside [0, 1]");
  }
}

std::string PeriodicBinary::to_string() const {
  std::string s = integer_part ? "1." : "0.";
  for (const bool b : preperiod) s += b ? '1' : '0';
  if (!period.empty()) {
    s += '(';
    for (const bool b : period) s += b ? '1' : '0';
    s += ')';
  }
  return s;
}

PeriodicBinary binary_of_rational(const Rational& x) {
  if (x.sign() < 0 || x > Rational(1)) {
    throw std::domain_error("binary_of_rational: argument outside [0, 1]");
  }
  PeriodicBinary pb;
  if (x == Rational(1)) {
    pb.integer_part = 1;
    return pb;
  }
  const Integer q = x.den();
  Integer r = x.num();
  std::map<Integer, std::size_t> seen;  // remainder -> bit index
  std::vector<bool> bits;
  while (sgn(r) != 0) {
    if (const auto it = seen.find(r); it != seen.end()) {
      pb.preperiod.assign(bits.begin(), bits.begin() + it->second);
      pb.period.assign(bits.begin() + it->second, bits.end());
      pb.normalize();
      return pb;
    }
    seen.emplace(r, bits.size());
    r <<= 1;
    if (r >= q) {
      bits.push_back(true);
      r -= q;
    } else {
      bits.push_back(false);
    }
  }
  pb.preperiod = std::move(bits);
  pb.normalize();
  return pb;
}

Rational rational_of_binary(const PeriodicBinary& pb) {
  PeriodicBinary c = pb;
  c.normalize();
  const std::size_t k = c.preperiod.size(), m = c.period.size();
  // value = n + P/2^k + Q/(2^k (2^m - 1))
  Rational v = Rational(c.integer_part);
  if (k > 0) {
    v += Rational(bits_to_integer(c.preperiod)) * pow2(-static_cast<long>(k));
  }
  if (m > 0) {
    const Rational denom = pow2(static_cast<long>(m)) - Rational(1);
    v += Rational(bits_to_integer(c.period)) / denom * pow2(-static_cast<long>(k));
  }
  return v;
}

}  // namespace triwalk
