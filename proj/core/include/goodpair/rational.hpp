#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace goodpair {

using Rational = mpq_class;
using Integer = mpz_class;

inline int sign(const Rational& q) { return sgn(q); }
inline Rational rat_abs(const Rational& q) { return abs(q); }

// Accepts "p", "-p", "p/q" with optional whitespace padding. Throws ParseError.
Rational parse_rational(const std::string& text);

// Canonical form: "p" for integers, "p/q" otherwise, q > 0, gcd(p,q) = 1.
std::string rational_str(const Rational& q);
std::string integer_str(const Integer& z);

// Checked narrowing; throws ContractError when out of range.
std::int64_t to_int64(const Integer& z);
std::uint64_t to_uint64(const Integer& z);

// The unique rational with smallest denominator (ties: smallest |numerator|)
// in the closed interval [lo, hi]. Requires lo <= hi.
Rational simplest_rational_between(const Rational& lo, const Rational& hi);

// Largest integer a >= 0 with a*a*den(r) < num(r), i.e. a < sqrt(r), for r > 0.
// Returns -1 when r <= 0 has no such a (r <= 0 admits none since 0*0 = 0 < r fails).
Integer floor_strict_sqrt(const Rational& r);

// FNV-1a, used for stable content ids across runs.
constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

inline void hash_bytes(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
}
inline void hash_u64(std::uint64_t& h, std::uint64_t v) { hash_bytes(h, &v, sizeof v); }
inline void hash_str(std::uint64_t& h, const std::string& s) { hash_bytes(h, s.data(), s.size()); }
void hash_rational(std::uint64_t& h, const Rational& q);

std::string hex_id(std::uint64_t h);

// Deterministic 64-bit generator (splitmix64); stdlib distributions are not
// portable across implementations, so sampling helpers live here too.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Uniform in [lo, hi], inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  // Random rational p/q with |p| <= num_bound, 1 <= q <= den_bound.
  Rational uniform_rational(std::int64_t num_bound, std::int64_t den_bound);

 private:
  std::uint64_t state_;
};

}  // namespace goodpair
