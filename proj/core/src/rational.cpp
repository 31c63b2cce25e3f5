#include "goodpair/rational.hpp"

#include <cctype>
#include <limits>

#include "goodpair/errors.hpp"

namespace goodpair {

Rational parse_rational(const std::string& text) {
  std::size_t b = 0, e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string t = text.substr(b, e - b);
  if (t.empty()) throw ParseError("empty rational literal");
  std::size_t slash = t.find('/');
  auto check_int = [&](const std::string& s) {
    if (s.empty()) throw ParseError("malformed rational literal '" + text + "'");
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) throw ParseError("malformed rational literal '" + text + "'");
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw ParseError("malformed rational literal '" + text + "'");
  };
  if (slash == std::string::npos) {
    check_int(t);
    return Rational(Integer(t));
  }
  std::string num = t.substr(0, slash), den = t.substr(slash + 1);
  check_int(num);
  check_int(den);
  Integer d(den);
  if (d == 0) throw ParseError("zero denominator in '" + text + "'");
  Rational q(Integer(num), d);
  q.canonicalize();
  return q;
}

std::string rational_str(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string integer_str(const Integer& z) { return z.get_str(); }

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw ContractError("integer out of 64-bit range: " + z.get_str());
  return static_cast<std::int64_t>(z.get_si());
}

std::uint64_t to_uint64(const Integer& z) {
  if (z < 0 || !z.fits_ulong_p())
    throw ContractError("integer out of unsigned 64-bit range: " + z.get_str());
  return static_cast<std::uint64_t>(z.get_ui());
}

// Continued-fraction walk: the simplest value in [lo, hi] with 0 < lo is
// ceil(lo) when an integer fits, else floor(lo) + 1/simplest(reciprocals).
// The frame (a,b,c,d) maps the value x found at the current level back to
// the top as (a*x + b)/(c*x + d).
Rational simplest_rational_between(const Rational& lo, const Rational& hi) {
  if (lo > hi) throw ContractError("simplest_rational_between: empty interval");
  if (lo <= 0 && 0 <= hi) return Rational(0);
  if (hi < 0) return -simplest_rational_between(-hi, -lo);
  Integer lo_num = lo.get_num(), lo_den = lo.get_den();
  Integer hi_num = hi.get_num(), hi_den = hi.get_den();
  Integer a = 1, b = 0, c = 0, d = 1;
  while (true) {
    Integer fl = lo_num / lo_den;  // floor; operands positive
    Integer fh = hi_num / hi_den;
    Integer cl = (lo_num + lo_den - 1) / lo_den;  // ceil
    if (cl <= fh) {
      Rational r(a * cl + b, c * cl + d);
      r.canonicalize();
      return r;
    }
    // No integer inside, so both fractional parts are nonzero. Descend on
    // reciprocals: x in [lo-fl, hi-fl] subset (0,1), 1/x in [1/(hi-fl), 1/(lo-fl)].
    Integer new_lo_num = hi_den, new_lo_den = hi_num - fl * hi_den;
    Integer new_hi_num = lo_den, new_hi_den = lo_num - fl * lo_den;
    Integer na = a * fl + b;
    Integer nc = c * fl + d;
    b = a;
    d = c;
    a = na;
    c = nc;
    lo_num = new_lo_num;
    lo_den = new_lo_den;
    hi_num = new_hi_num;
    hi_den = new_hi_den;
  }
}

Integer floor_strict_sqrt(const Rational& r) {
  if (r <= 0) return Integer(-1);
  Integer q = r.get_num() / r.get_den();
  Integer a = sqrt(q);  // floor sqrt of floor(r)
  while ((a + 1) * (a + 1) * r.get_den() < r.get_num()) ++a;
  while (a >= 0 && a * a * r.get_den() >= r.get_num()) --a;
  return a;
}

void hash_rational(std::uint64_t& h, const Rational& q) {
  hash_str(h, q.get_num().get_str());
  hash_str(h, q.get_den().get_str());
}

std::string hex_id(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[h & 0xf];
    h >>= 4;
  }
  return s;
}

std::uint64_t Rng::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw ContractError("uniform_int: empty range");
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());  // full range
  // Rejection sampling keeps the distribution exact.
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return lo + static_cast<std::int64_t>(v % span);
}

Rational Rng::uniform_rational(std::int64_t num_bound, std::int64_t den_bound) {
  Rational q(uniform_int(-num_bound, num_bound), uniform_int(1, den_bound));
  q.canonicalize();
  return q;
}

}  // namespace goodpair
