#pragma once

#include <vector>

#include "goodpair/poly.hpp"
#include "goodpair/rational.hpp"

namespace goodpair {

// Closed interval with exact rational endpoints, lo <= hi.
struct RatInterval {
  Rational lo, hi;

  static RatInterval point(const Rational& v) { return {v, v}; }
  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  Rational mid() const { return (lo + hi) / 2; }
  Rational width() const { return hi - lo; }
  bool operator==(const RatInterval& o) const { return lo == o.lo && hi == o.hi; }
};

RatInterval interval_add(const RatInterval& a, const RatInterval& b);
RatInterval interval_mul(const RatInterval& a, const RatInterval& b);
RatInterval interval_scale(const RatInterval& a, const Rational& c);
RatInterval interval_pow(const RatInterval& a, std::uint32_t e);

// Encloses the range of p over the box (one interval per variable).
RatInterval interval_eval(const Poly& p, const std::vector<RatInterval>& box);

}  // namespace goodpair
