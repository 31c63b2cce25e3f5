#include "goodpair/gbsp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>

#include "goodpair/errors.hpp"

namespace goodpair {

namespace {

Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

// base >= 1, any integer exponent.
Rational int_power(const Integer& base, long e) {
  if (e >= 0) return Rational(ipow(base, static_cast<unsigned long>(e)));
  return Rational(1) / Rational(ipow(base, static_cast<unsigned long>(-e)));
}

void validate_power_law(const PowerLawData& d) {
  if (d.l < 1 || d.n <= d.l) throw ContractError("power-law data needs n > l >= 1");
  if (d.tau < static_cast<unsigned long>(d.n)) throw ContractError("tau must be at least n");
  if (d.s <= 0) throw ContractError("s must be positive");
}

void require_quadratic(const QuadraticFunction& f) {
  const std::size_t dim = f.r.size();
  if (dim == 0) throw ContractError("a probe function needs at least one variable");
  if (f.h.size() != dim) throw ContractError("hessian size does not match the linear part");
  for (std::size_t i = 0; i < dim; ++i) {
    if (f.h[i].size() != dim) throw ContractError("hessian rows must all have the full width");
    for (std::size_t j = i + 1; j < dim; ++j) {
      if (f.h[i][j] != f.h[j][i]) {
        throw ContractError("hessian must be symmetric: entries (" + std::to_string(i + 1) +
                            ", " + std::to_string(j + 1) + ") and (" + std::to_string(j + 1) +
                            ", " + std::to_string(i + 1) + ") disagree");
      }
    }
  }
}

constexpr std::size_t kMaxCoverDim = 16;
constexpr std::uint32_t kMaxCellsPerAxis = 1u << 20;

// phi rewritten in cell coordinates t in [0, m]^dim, y = base + delta * t,
// as a0 + sum lin[i] t_i + sum_{i<=j} quad[i][j] t_i t_j. The slab test
// |phi| < thr becomes phi(t)^2 < t2 with t2 = thr^2, kept squared so only
// rational values are ever compared.
struct CellForm {
  std::size_t dim = 0;
  Rational a0;
  std::vector<Rational> lin;
  std::vector<std::vector<Rational>> quad;
  Rational t2;
};

CellForm cell_form(const QuadraticFunction& f, const std::vector<Rational>& center,
                   const Rational& alpha, const Rational& delta, const Rational& t2) {
  const std::size_t dim = f.r.size();
  CellForm out;
  out.dim = dim;
  out.lin.resize(dim);
  out.quad.assign(dim, std::vector<Rational>(dim, Rational(0)));
  std::vector<Rational> base(dim);
  for (std::size_t i = 0; i < dim; ++i) base[i] = center[i] - alpha;
  out.a0 = qf_value(f, base);
  const std::vector<Rational> grad = qf_gradient(f, base);
  for (std::size_t i = 0; i < dim; ++i) {
    out.lin[i] = delta * grad[i];
    out.quad[i][i] = delta * delta * f.h[i][i] / 2;
    for (std::size_t j = i + 1; j < dim; ++j) out.quad[i][j] = delta * delta * f.h[i][j];
  }
  out.t2 = t2;
  return out;
}

// Walker contract: range() is an interval hull of phi over the box of cells
// [lo_i, hi_i) (t runs over [lo_i, hi_i], all nonnegative), certainly_out
// means every point of the box has phi^2 >= t2, certainly_in means every
// point has phi^2 < t2.
template <typename E>
std::uint64_t walk_cells(const E& ev, std::size_t dim, std::uint32_t* lo, std::uint32_t* hi) {
  typename E::Value vlo, vhi;
  ev.range(lo, hi, vlo, vhi);
  if (ev.certainly_out(vlo, vhi)) return 0;
  std::uint64_t vol = 1;
  std::size_t ax = dim;
  std::uint32_t best = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    const std::uint32_t len = hi[i] - lo[i];
    vol *= len;
    if (len > best) {
      best = len;
      ax = i;
    }
  }
  if (ev.certainly_in(vlo, vhi)) return vol;
  if (ax == dim) return 1;  // single cell that may meet the slab
  const std::uint32_t mid = lo[ax] + (hi[ax] - lo[ax]) / 2;
  const std::uint32_t saved_hi = hi[ax];
  hi[ax] = mid;
  const std::uint64_t left = walk_cells(ev, dim, lo, hi);
  hi[ax] = saved_hi;
  const std::uint32_t saved_lo = lo[ax];
  lo[ax] = mid;
  const std::uint64_t right = walk_cells(ev, dim, lo, hi);
  lo[ax] = saved_lo;
  return left + right;
}

struct FastLin {
  std::uint32_t i;
  long long c;
};
struct FastQuad {
  std::uint32_t i, j;
  long long c;
};

// Integer form of the cell coefficients, scaled by a common denominator so
// the comparisons stay exact. Usable only when the setup proved the
// magnitudes fit (values below 2^62, squared-and-scaled compares below
// 2^126).
struct FastCoeffs {
  long long a0 = 0;
  std::vector<FastLin> lin;
  std::vector<FastQuad> quad;
  unsigned __int128 t_num = 0, t_den = 1;
};

struct RatEval {
  using Value = Rational;
  Rational a0;
  std::vector<std::pair<std::uint32_t, Rational>> lin;
  std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, Rational>> quad;
  Rational t2;

  void range(const std::uint32_t* lo, const std::uint32_t* hi, Value& vlo, Value& vhi) const {
    vlo = a0;
    vhi = a0;
    for (const auto& [i, c] : lin) {
      const Rational p1 = c * Rational(static_cast<unsigned long>(lo[i]));
      const Rational p2 = c * Rational(static_cast<unsigned long>(hi[i]));
      if (c > 0) {
        vlo += p1;
        vhi += p2;
      } else {
        vlo += p2;
        vhi += p1;
      }
    }
    for (const auto& [ij, c] : quad) {
      const unsigned long long plo = static_cast<unsigned long long>(lo[ij.first]) * lo[ij.second];
      const unsigned long long phi = static_cast<unsigned long long>(hi[ij.first]) * hi[ij.second];
      const Rational p1 = c * Rational(static_cast<unsigned long>(plo));
      const Rational p2 = c * Rational(static_cast<unsigned long>(phi));
      if (c > 0) {
        vlo += p1;
        vhi += p2;
      } else {
        vlo += p2;
        vhi += p1;
      }
    }
  }
  bool certainly_out(const Value& vlo, const Value& vhi) const {
    if (vlo > 0) return vlo * vlo >= t2;
    if (vhi < 0) return vhi * vhi >= t2;
    return false;
  }
  bool certainly_in(const Value& vlo, const Value& vhi) const {
    const Rational m = std::max(abs(vlo), abs(vhi));
    return m * m < t2;
  }
};

unsigned __int128 u128_of(const Integer& z) {  // 0 <= z < 2^128
  const Integer hi = z >> 64;
  const Integer lo = z - (hi << 64);
  return (static_cast<unsigned __int128>(mpz_get_ui(hi.get_mpz_t())) << 64) |
         mpz_get_ui(lo.get_mpz_t());
}

std::optional<FastCoeffs> try_fast(const CellForm& cf, std::uint32_t m) {
  Integer dall(1);
  auto fold = [&dall](const Rational& c) {
    mpz_lcm(dall.get_mpz_t(), dall.get_mpz_t(), c.get_den().get_mpz_t());
  };
  fold(cf.a0);
  for (const Rational& c : cf.lin) fold(c);
  for (std::size_t i = 0; i < cf.dim; ++i)
    for (std::size_t j = i; j < cf.dim; ++j) fold(cf.quad[i][j]);

  auto scaled = [&dall](const Rational& c) { return Rational(c * Rational(dall)).get_num(); };
  FastCoeffs ev;
  Integer bound = abs(scaled(cf.a0));
  const Integer mz(static_cast<unsigned long>(m) + 1);
  std::vector<Integer> lin_i(cf.dim);
  for (std::size_t i = 0; i < cf.dim; ++i) {
    lin_i[i] = scaled(cf.lin[i]);
    bound += abs(lin_i[i]) * mz;
  }
  std::vector<std::vector<Integer>> quad_i(cf.dim, std::vector<Integer>(cf.dim));
  for (std::size_t i = 0; i < cf.dim; ++i) {
    for (std::size_t j = i; j < cf.dim; ++j) {
      quad_i[i][j] = scaled(cf.quad[i][j]);
      bound += abs(quad_i[i][j]) * mz * mz;
    }
  }
  const Rational tbar = cf.t2 * Rational(dall) * Rational(dall);
  const Integer lim126 = Integer(1) << 126;
  if (bound >= (Integer(1) << 62)) return std::nullopt;
  if (bound * bound * tbar.get_den() >= lim126) return std::nullopt;
  if (tbar.get_num() >= lim126) return std::nullopt;

  auto fits = [](const Integer& z) { return mpz_fits_slong_p(z.get_mpz_t()) != 0; };
  if (!fits(scaled(cf.a0))) return std::nullopt;
  ev.a0 = mpz_get_si(Integer(scaled(cf.a0)).get_mpz_t());
  for (std::size_t i = 0; i < cf.dim; ++i) {
    if (lin_i[i] == 0) continue;
    if (!fits(lin_i[i])) return std::nullopt;
    ev.lin.push_back({static_cast<std::uint32_t>(i), mpz_get_si(lin_i[i].get_mpz_t())});
  }
  for (std::size_t i = 0; i < cf.dim; ++i) {
    for (std::size_t j = i; j < cf.dim; ++j) {
      if (quad_i[i][j] == 0) continue;
      if (!fits(quad_i[i][j])) return std::nullopt;
      ev.quad.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                         mpz_get_si(quad_i[i][j].get_mpz_t())});
    }
  }
  ev.t_num = u128_of(tbar.get_num());
  ev.t_den = u128_of(tbar.get_den());
  return ev;
}

using I128 = __int128;

long long div_floor_ll(I128 a, I128 b) {  // b > 0
  I128 q = a / b;
  if (a % b != 0 && a < 0) --q;
  return static_cast<long long>(q);
}

// Smallest t in [lo, hi) with pred(t), where pred is monotone
// false-then-true on that range; hi if none. The hint only speeds up the
// search: every boundary is still fixed by exact predicate evaluations.
template <typename P>
long long first_true(const P& pred, long long lo, long long hi, long long hint) {
  if (lo >= hi) return hi;
  long long h = hint < lo ? lo : (hint >= hi ? hi - 1 : hint);
  if (pred(h)) {
    long long width = 1, left = h;
    while (left > lo) {
      long long cand = left - width < lo ? lo : left - width;
      if (pred(cand)) {
        left = cand;
        width <<= 1;
      } else {
        long long a = cand + 1, b = left;
        while (a < b) {
          const long long mid = a + (b - a) / 2;
          if (pred(mid)) {
            b = mid;
          } else {
            a = mid + 1;
          }
        }
        return a;
      }
    }
    return lo;
  }
  long long width = 1, right = h;
  while (right + 1 < hi) {
    long long cand = right + width >= hi ? hi - 1 : right + width;
    if (!pred(cand)) {
      right = cand;
      width <<= 1;
    } else {
      long long a = right + 1, b = cand;
      while (a < b) {
        const long long mid = a + (b - a) / 2;
        if (pred(mid)) {
          b = mid;
        } else {
          a = mid + 1;
        }
      }
      return a;
    }
  }
  return hi;
}

// Counts t in [t0, t1) where q(t) = a + b t + c t^2 clears the positive
// threshold sqrt(t_num / t_den): q(t) > 0 and q(t)^2 * t_den >= t_num.
// Splits [t0, t1) at the vertex into monotone pieces and finds each
// boundary by exact search. hints[0..1] carry the previous column's
// boundaries.
struct ThresholdCount {
  unsigned __int128 t_num = 0, t_den = 1;

  bool ge(I128 a, I128 b, I128 c, long long t) const {
    const I128 v = a + t * (b + c * t);
    if (v <= 0) return false;
    const unsigned __int128 sq = static_cast<unsigned __int128>(v) * static_cast<unsigned __int128>(v);
    return sq * t_den >= t_num;
  }

  std::uint64_t count(I128 a, I128 b, I128 c, long long t0, long long t1,
                      long long* hints) const {
    if (t0 >= t1) return 0;
    auto yes = [&](long long t) { return ge(a, b, c, t); };
    auto no = [&](long long t) { return !ge(a, b, c, t); };
    std::uint64_t n = 0;
    if (c == 0) {
      if (b == 0) return yes(t0) ? static_cast<std::uint64_t>(t1 - t0) : 0;
      if (b > 0) {
        const long long e = first_true(yes, t0, t1, hints[0]);
        hints[0] = e;
        return static_cast<std::uint64_t>(t1 - e);
      }
      const long long e = first_true(no, t0, t1, hints[0]);
      hints[0] = e;
      return static_cast<std::uint64_t>(e - t0);
    }
    if (c > 0) {
      // Steps q(t+1)-q(t) = b + c(2t+1) turn nonnegative at the vertex.
      long long v = div_floor_ll(-b - c + 2 * c - 1, 2 * c);
      v = v < t0 ? t0 : (v > t1 ? t1 : v);
      const long long e1 = first_true(no, t0, v, hints[0]);
      if (e1 < v) hints[0] = e1;
      n += static_cast<std::uint64_t>(e1 - t0);
      const long long e2 = first_true(yes, v, t1, hints[1]);
      if (e2 < t1) hints[1] = e2;
      n += static_cast<std::uint64_t>(t1 - e2);
      return n;
    }
    // Concave: a single bump can clear the threshold.
    long long v = div_floor_ll(b + c, -2 * c);  // steps stay positive while t <= v
    ++v;
    v = v < t0 ? t0 : (v > t1 ? t1 : v);
    const long long e1 = first_true(yes, t0, v, hints[0]);
    if (e1 < v) hints[0] = e1;
    n += static_cast<std::uint64_t>(v - e1);
    const long long e2 = first_true(no, v, t1, hints[1]);
    if (e2 < t1) hints[1] = e2;
    n += static_cast<std::uint64_t>(e2 - v);
    return n;
  }
};

// Column counter: walks every cell of the grid projected along the fiber
// axis and counts, per column, the cells NOT certainly outside the slab.
// Along a column the interval bounds lo(t), hi(t) of phi are quadratics in
// the fiber coordinate t, so each column costs a handful of exact
// monotone searches instead of a walk over its cells.
struct ColumnTerms {
  std::size_t fiber = 0;
  long long fiber_lin = 0;   // coefficient of t
  long long fiber_quad = 0;  // coefficient of t^2
  std::vector<FastLin> rest_lin;
  std::vector<FastQuad> rest_quad;  // neither index is the fiber
  std::vector<FastLin> cross;       // t times the named axis
};

std::uint64_t count_columns(const FastCoeffs& fc, std::size_t dim, std::size_t fiber,
                            std::uint32_t m) {
  ColumnTerms ct;
  ct.fiber = fiber;
  for (const FastLin& t : fc.lin) {
    if (t.i == fiber) {
      ct.fiber_lin += t.c;
    } else {
      ct.rest_lin.push_back(t);
    }
  }
  for (const FastQuad& t : fc.quad) {
    if (t.i == fiber && t.j == fiber) {
      ct.fiber_quad += t.c;
    } else if (t.i == fiber) {
      ct.cross.push_back({t.j, t.c});
    } else if (t.j == fiber) {
      ct.cross.push_back({t.i, t.c});
    } else {
      ct.rest_quad.push_back(t);
    }
  }

  const ThresholdCount thr{fc.t_num, fc.t_den};
  std::vector<std::uint32_t> u(dim, 0);  // cells of the non-fiber axes
  std::vector<std::size_t> order;        // iteration axes
  for (std::size_t i = 0; i < dim; ++i)
    if (i != fiber) order.push_back(i);

  long long hints_lo[2] = {0, static_cast<long long>(m)};
  long long hints_hi[2] = {0, static_cast<long long>(m)};
  std::uint64_t total = 0;
  while (true) {
    // Quadratics lo(t) = al + bl t + cl t^2 and hi(t) (at t+1 corners).
    I128 al = fc.a0, bl = 0, cl = 0;
    I128 ah = fc.a0, bh = 0, chq = 0;
    for (const FastLin& t : ct.rest_lin) {
      const I128 p1 = static_cast<I128>(t.c) * u[t.i];
      const I128 p2 = static_cast<I128>(t.c) * (u[t.i] + 1ll);
      if (t.c > 0) {
        al += p1;
        ah += p2;
      } else {
        al += p2;
        ah += p1;
      }
    }
    for (const FastQuad& t : ct.rest_quad) {
      const I128 p1 = static_cast<I128>(t.c) *
                      static_cast<long long>(static_cast<unsigned long long>(u[t.i]) * u[t.j]);
      const I128 p2 = static_cast<I128>(t.c) *
                      static_cast<long long>(static_cast<unsigned long long>(u[t.i] + 1ull) *
                                             (u[t.j] + 1ull));
      if (t.c > 0) {
        al += p1;
        ah += p2;
      } else {
        al += p2;
        ah += p1;
      }
    }
    if (ct.fiber_lin > 0) {
      bl += ct.fiber_lin;          // lo picks c t
      ah += ct.fiber_lin;          // hi picks c (t+1)
      bh += ct.fiber_lin;
    } else if (ct.fiber_lin < 0) {
      al += ct.fiber_lin;
      bl += ct.fiber_lin;
      bh += ct.fiber_lin;
    }
    if (ct.fiber_quad > 0) {
      cl += ct.fiber_quad;         // lo picks c t^2
      ah += ct.fiber_quad;         // hi picks c (t+1)^2
      bh += 2 * static_cast<I128>(ct.fiber_quad);
      chq += ct.fiber_quad;
    } else if (ct.fiber_quad < 0) {
      al += ct.fiber_quad;   // lo picks c (t+1)^2
      bl += 2 * static_cast<I128>(ct.fiber_quad);
      cl += ct.fiber_quad;
      chq += ct.fiber_quad;  // hi picks c t^2
    }
    for (const FastLin& t : ct.cross) {
      const I128 lo_u = u[t.i];
      const I128 hi_u = u[t.i] + 1ll;
      if (t.c > 0) {
        bl += static_cast<I128>(t.c) * lo_u;   // c t u
        ah += static_cast<I128>(t.c) * hi_u;   // c (t+1)(u+1)
        bh += static_cast<I128>(t.c) * hi_u;
      } else {
        al += static_cast<I128>(t.c) * hi_u;
        bl += static_cast<I128>(t.c) * hi_u;
        bh += static_cast<I128>(t.c) * lo_u;   // c t u
      }
    }

    // Count cells certainly outside: lo above the threshold or hi below
    // its negative. The two cases are disjoint, so the column contributes
    // m minus both counts.
    const std::uint64_t above = thr.count(al, bl, cl, 0, m, hints_lo);
    const std::uint64_t below = thr.count(-ah, -bh, -chq, 0, m, hints_hi);
    total += m - above - below;

    std::size_t pos = 0;
    for (; pos < order.size(); ++pos) {
      if (++u[order[pos]] < m) break;
      u[order[pos]] = 0;
    }
    if (pos == order.size()) break;
  }
  return total;
}

RatEval rational_eval(const CellForm& cf) {
  RatEval ev;
  ev.a0 = cf.a0;
  for (std::size_t i = 0; i < cf.dim; ++i)
    if (cf.lin[i] != 0) ev.lin.emplace_back(static_cast<std::uint32_t>(i), cf.lin[i]);
  for (std::size_t i = 0; i < cf.dim; ++i)
    for (std::size_t j = i; j < cf.dim; ++j)
      if (cf.quad[i][j] != 0)
        ev.quad.push_back({{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)},
                           cf.quad[i][j]});
  ev.t2 = cf.t2;
  return ev;
}

}  // namespace

Rational critical_exponent(std::size_t n, std::size_t l, const Rational& tau) {
  if (l < 1 || n <= l) throw ContractError("the critical exponent needs n > l >= 1");
  if (tau <= 0) throw ContractError("tau must be positive");
  return Rational(static_cast<unsigned long>(n - l - 1)) +
         Rational(static_cast<unsigned long>(n + 1)) / (tau + 1);
}

Rational critical_exponent_limit(std::size_t n, std::size_t l) {
  if (l < 1 || n <= l) throw ContractError("the critical exponent needs n > l >= 1");
  return Rational(static_cast<unsigned long>(n - l - 1));
}

std::string series_class_str(SeriesClass c) {
  switch (c) {
    case SeriesClass::Convergent: return "Convergent";
    case SeriesClass::Divergent: return "Divergent";
    case SeriesClass::Critical: return "Critical";
  }
  return "Convergent";
}

Rational shell_exponent(const PowerLawData& d) {
  validate_power_law(d);
  const Rational n(static_cast<unsigned long>(d.n));
  const Rational l(static_cast<unsigned long>(d.l));
  return n - (d.tau + 1) * (d.s + l + 1 - n);
}

SeriesClass classify_series(const PowerLawData& d) {
  const Rational e = shell_exponent(d);
  const int c = cmp(e, Rational(-1));
  if (c < 0) return SeriesClass::Convergent;
  if (c > 0) return SeriesClass::Divergent;
  return SeriesClass::Critical;
}

Integer shell_count(std::size_t n, std::uint64_t q) {
  if (n < 1) throw ContractError("shell counts need dimension n >= 1");
  if (q < 1) throw ContractError("shells start at q = 1");
  const Integer two_q(static_cast<unsigned long>(2 * q));
  return ipow(two_q + 1, static_cast<unsigned long>(n)) -
         ipow(two_q - 1, static_cast<unsigned long>(n));
}

Rational shell_term(const PowerLawData& d, std::uint64_t q) {
  validate_power_law(d);
  if (q < 1) throw ContractError("shells start at q = 1");
  const Rational nl(static_cast<unsigned long>(d.n - d.l));
  const Rational e = nl + d.tau * (nl - 1) - (d.tau + 1) * d.s;
  if (e.get_den() != 1) {
    throw ContractError("the per-vector exponent must be an integer for exact evaluation; got " +
                        rational_str(e));
  }
  const long ee = to_int64(e.get_num());
  return Rational(shell_count(d.n, q)) * int_power(Integer(static_cast<unsigned long>(q)), ee);
}

std::vector<Rational> series_oracle(const PowerLawData& d, std::size_t q_max) {
  validate_power_law(d);
  if (q_max < 1) throw ContractError("the series needs at least one shell");
  if (q_max > 10000) throw ContractError("q_max is capped at 10000");
  std::vector<Rational> partial;
  partial.reserve(q_max);
  Rational sum(0);
  for (std::size_t q = 1; q <= q_max; ++q) {
    sum += shell_term(d, q);
    partial.push_back(sum);
  }
  return partial;
}

bool sq_p_membership(const std::vector<Rational>& x, const ManifoldSpec& spec,
                     const std::vector<std::int64_t>& q, std::int64_t p, const Rational& theta,
                     const Rational& tau) {
  const std::size_t dim = spec.system.dim;
  if (x.size() != dim) throw ContractError("the point must have the manifold's dimension");
  if (q.size() != spec.n) throw ContractError("q must have one entry per ambient coordinate");
  if (tau <= 0) throw ContractError("tau must be positive");
  Integer sup(0);
  for (const std::int64_t qi : q) {
    Integer a(static_cast<long>(qi));
    a = abs(a);
    if (a > sup) sup = a;
  }
  if (sup == 0) throw ContractError("q = 0 indexes no slab");

  Rational v(0);
  for (std::size_t i = 0; i < dim; ++i) v += Rational(static_cast<long>(q[i])) * x[i];
  for (std::size_t u = 0; u < spec.l; ++u) {
    Rational g(0);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) g += x[i] * spec.system.forms[u][i][j] * x[j];
    v += Rational(static_cast<long>(q[dim + u])) * g / 2;
  }
  v -= Rational(static_cast<long>(p));
  v -= theta;
  if (v == 0) return true;

  // |v| < sup^(-a/b) exactly: |v|^b * sup^a < 1.
  if (mpz_fits_ulong_p(tau.get_num().get_mpz_t()) == 0 ||
      mpz_fits_ulong_p(tau.get_den().get_mpz_t()) == 0) {
    throw ContractError("tau is too large to clear exactly");
  }
  const unsigned long a = mpz_get_ui(tau.get_num().get_mpz_t());
  const unsigned long b = mpz_get_ui(tau.get_den().get_mpz_t());
  const Rational va = abs(v);
  const Rational lhs =
      Rational(ipow(va.get_num(), b)) / Rational(ipow(va.get_den(), b)) * Rational(ipow(sup, a));
  return lhs < 1;
}

Rational qf_value(const QuadraticFunction& f, const std::vector<Rational>& y) {
  require_quadratic(f);
  const std::size_t dim = f.r.size();
  if (y.size() != dim) throw ContractError("the point must match the probe dimension");
  Rational v = f.a;
  Rational quad(0);
  for (std::size_t i = 0; i < dim; ++i) {
    v += f.r[i] * y[i];
    for (std::size_t j = 0; j < dim; ++j) quad += y[i] * f.h[i][j] * y[j];
  }
  return v + quad / 2;
}

std::vector<Rational> qf_gradient(const QuadraticFunction& f, const std::vector<Rational>& y) {
  require_quadratic(f);
  const std::size_t dim = f.r.size();
  if (y.size() != dim) throw ContractError("the point must match the probe dimension");
  std::vector<Rational> g(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    g[i] = f.r[i];
    for (std::size_t j = 0; j < dim; ++j) g[i] += f.h[i][j] * y[j];
  }
  return g;
}

QuadraticFunction probe_function(const QuadraticSystem& sys, const std::vector<Rational>& weights,
                                 const std::vector<Rational>& r, const Rational& a) {
  if (weights.size() != sys.l) throw ContractError("one weight per form is required");
  if (r.size() != sys.dim) throw ContractError("the linear part must match the system dimension");
  if (sys.forms.size() != sys.l) throw ContractError("the system must carry one hessian per form");
  QuadraticFunction f;
  f.a = a;
  f.r = r;
  f.h.assign(sys.dim, std::vector<Rational>(sys.dim, Rational(0)));
  for (std::size_t u = 0; u < sys.l; ++u) {
    if (sys.forms[u].size() != sys.dim) throw ContractError("system hessians must be square");
    for (std::size_t i = 0; i < sys.dim; ++i) {
      if (sys.forms[u][i].size() != sys.dim) throw ContractError("system hessians must be square");
      for (std::size_t j = 0; j < sys.dim; ++j) f.h[i][j] += weights[u] * sys.forms[u][i][j];
    }
  }
  require_quadratic(f);
  return f;
}

CoverCount covering_count(const CoverProbe& probe, const Rational& delta) {
  require_quadratic(probe.phi);
  const std::size_t dim = probe.phi.r.size();
  if (dim < 2) throw ContractError("the covering probe needs dimension at least 2");
  if (dim > kMaxCoverDim) throw ContractError("the covering probe supports dimension at most 16");
  if (probe.center.size() != dim) throw ContractError("the center must match the probe dimension");
  if (probe.alpha <= 0) throw ContractError("alpha must be positive");
  if (probe.c <= 0) throw ContractError("the dominance factor c must be positive");
  if (delta <= 0) throw ContractError("delta must be positive");
  if (delta > probe.alpha) throw ContractError("delta must not exceed alpha");

  const Rational ratio = Rational(2) * probe.alpha / delta;
  if (ratio.get_den() != 1) throw ContractError("delta must divide the ball diameter 2*alpha evenly");
  if (mpz_fits_ulong_p(ratio.get_num().get_mpz_t()) == 0 ||
      mpz_get_ui(ratio.get_num().get_mpz_t()) > kMaxCellsPerAxis) {
    throw ContractError("grid too fine: more than 2^20 cells per axis");
  }
  const std::uint32_t m = static_cast<std::uint32_t>(mpz_get_ui(ratio.get_num().get_mpz_t()));
  if (ipow(Integer(static_cast<unsigned long>(m)), static_cast<unsigned long>(dim)) >=
      (Integer(1) << 62)) {
    throw ContractError("grid too fine: the total cell count overflows the counter");
  }

  const std::vector<Rational> grad = qf_gradient(probe.phi, probe.center);
  Rational g2(0);
  for (const Rational& g : grad) g2 += g * g;
  if (g2 == 0) throw ContractError("the gradient of phi vanishes at the center; the slab has no width");
  Rational f2(0);
  for (const auto& row : probe.phi.h)
    for (const Rational& hij : row) f2 += hij * hij;
  const Rational rhs = probe.c * probe.c * probe.alpha * probe.alpha * f2;
  const bool pre_ok = g2 >= rhs;
  if (!pre_ok && probe.strict) {
    throw ContractError("gradient-dominance precondition failed: |grad phi(center)|^2 = " +
                        rational_str(g2) + " is below c^2 * alpha^2 * |hess phi|^2 = " +
                        rational_str(rhs) +
                        "; the covering bound needs |grad phi(center)| >= c * alpha * |hess phi|");
  }

  const Rational t2 = g2 * delta * delta;
  const CellForm cf = cell_form(probe.phi, probe.center, probe.alpha, delta, t2);

  CoverCount out;
  out.cells_per_axis = m;
  out.precondition_ok = pre_ok;
  if (const std::optional<FastCoeffs> fast = try_fast(cf, m); fast.has_value()) {
    std::size_t fiber = 0;
    Rational steepest = abs(grad[0]);
    for (std::size_t i = 1; i < dim; ++i) {
      const Rational a = abs(grad[i]);
      if (a > steepest) {
        steepest = a;
        fiber = i;
      }
    }
    out.cells = count_columns(*fast, dim, fiber, m);
  } else {
    std::uint32_t lo[kMaxCoverDim] = {0};
    std::uint32_t hi[kMaxCoverDim];
    for (std::size_t i = 0; i < dim; ++i) hi[i] = m;
    const RatEval ev = rational_eval(cf);
    out.cells = walk_cells(ev, dim, lo, hi);
  }
  return out;
}

CoverSlope covering_slope(const CoverProbe& probe, unsigned k_min, unsigned k_max) {
  if (k_min < 1 || k_max < k_min || k_max > 30) {
    throw ContractError("the dyadic ladder needs 1 <= k_min <= k_max <= 30");
  }
  CoverSlope out;
  for (unsigned k = k_min; k <= k_max; ++k) {
    const Rational delta = probe.alpha / Rational(static_cast<unsigned long>(1ul << k));
    CoverCount rung = covering_count(probe, delta);
    if (rung.cells == 0) throw ContractError("the slab misses the sampled box; no growth to fit");
    out.deltas.push_back(delta);
    out.rungs.push_back(rung);
  }
  const std::size_t count = out.rungs.size();
  double sx = 0, sy = 0;
  std::vector<double> xs(count), ys(count);
  for (std::size_t i = 0; i < count; ++i) {
    xs[i] = (k_min + i) * std::log(2.0);
    ys[i] = std::log(static_cast<double>(out.rungs[i].cells));
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / static_cast<double>(count);
  const double my = sy / static_cast<double>(count);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < count; ++i) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) * (xs[i] - mx);
  }
  out.slope = den == 0 ? 0 : num / den;
  return out;
}

}  // namespace goodpair
