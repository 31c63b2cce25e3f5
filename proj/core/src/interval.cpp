#include "goodpair/interval.hpp"

#include <algorithm>

#include "goodpair/errors.hpp"

namespace goodpair {

RatInterval interval_add(const RatInterval& a, const RatInterval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

RatInterval interval_mul(const RatInterval& a, const RatInterval& b) {
  Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {std::min(std::min(p1, p2), std::min(p3, p4)),
          std::max(std::max(p1, p2), std::max(p3, p4))};
}

RatInterval interval_scale(const RatInterval& a, const Rational& c) {
  if (sign(c) >= 0) return {a.lo * c, a.hi * c};
  return {a.hi * c, a.lo * c};
}

RatInterval interval_pow(const RatInterval& a, std::uint32_t e) {
  if (e == 0) return RatInterval::point(Rational(1));
  auto rpow = [](const Rational& v, std::uint32_t k) {
    Rational r(1);
    for (std::uint32_t i = 0; i < k; ++i) r *= v;
    return r;
  };
  if (e % 2 == 1 || sign(a.lo) >= 0) return {rpow(a.lo, e), rpow(a.hi, e)};
  if (sign(a.hi) <= 0) return {rpow(a.hi, e), rpow(a.lo, e)};
  // Even power of a sign-straddling interval.
  return {Rational(0), std::max(rpow(a.lo, e), rpow(a.hi, e))};
}

RatInterval interval_eval(const Poly& p, const std::vector<RatInterval>& box) {
  if (box.size() != p.var_count()) throw DimensionError("box dimension mismatch");
  // Per-variable power intervals are cached across terms.
  std::vector<std::vector<RatInterval>> powers(box.size());
  auto power = [&](std::size_t v, std::uint32_t e) -> const RatInterval& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(RatInterval::point(Rational(1)));
    while (cache.size() <= e) {
      // Direct interval_pow is tighter than repeated multiplication for even
      // exponents, so compute each power from scratch.
      cache.push_back(interval_pow(box[v], static_cast<std::uint32_t>(cache.size())));
    }
    return cache[e];
  };
  RatInterval acc = RatInterval::point(Rational(0));
  for (const auto& [m, c] : p.terms()) {
    RatInterval term = RatInterval::point(c);
    for (std::size_t v = 0; v < p.var_count(); ++v)
      if (m.exponent(v) > 0) term = interval_mul(term, power(v, m.exponent(v)));
    acc = interval_add(acc, term);
  }
  return acc;
}

}  // namespace goodpair
