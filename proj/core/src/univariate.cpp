#include "goodpair/univariate.hpp"

#include <algorithm>

#include "goodpair/errors.hpp"

namespace goodpair {

UniPoly::UniPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

UniPoly UniPoly::dehomogenize_second(const Poly& p) {
  if (p.var_count() != 2) throw DimensionError("dehomogenization requires two variables");
  std::vector<Rational> coeffs(p.degree() + 1, Rational(0));
  for (const auto& [m, c] : p.terms()) coeffs[m.exponent(1)] += c;
  return UniPoly(std::move(coeffs));
}

const Rational& UniPoly::leading() const {
  if (coeffs_.empty()) throw ContractError("zero polynomial has no leading coefficient");
  return coeffs_.back();
}

Rational UniPoly::evaluate(const Rational& t) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

int UniPoly::sign_at_plus_inf() const {
  if (coeffs_.empty()) return 0;
  return sign(coeffs_.back());
}

int UniPoly::sign_at_minus_inf() const {
  if (coeffs_.empty()) return 0;
  int s = sign(coeffs_.back());
  return (degree() % 2 == 0) ? s : -s;
}

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() <= 1) return UniPoly();
  std::vector<Rational> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
  return UniPoly(std::move(d));
}

UniPoly UniPoly::operator-() const {
  std::vector<Rational> c(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] = -coeffs_[i];
  return UniPoly(std::move(c));
}

UniPoly UniPoly::operator*(const Rational& k) const {
  if (k == 0) return UniPoly();
  std::vector<Rational> c(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] = coeffs_[i] * k;
  return UniPoly(std::move(c));
}

UniPoly UniPoly::remainder(const UniPoly& divisor) const {
  if (divisor.is_zero()) throw ContractError("univariate division by zero");
  std::vector<Rational> rem = coeffs_;
  int dd = divisor.degree();
  const Rational& lead = divisor.coeffs_.back();
  while (static_cast<int>(rem.size()) - 1 >= dd) {
    Rational factor = rem.back() / lead;
    std::size_t shift = rem.size() - 1 - static_cast<std::size_t>(dd);
    for (int i = 0; i <= dd; ++i) rem[shift + static_cast<std::size_t>(i)] -= factor * divisor.coeffs_[static_cast<std::size_t>(i)];
    // Leading entry is now exactly zero by construction.
    rem.pop_back();
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
    if (rem.empty()) break;
  }
  return UniPoly(std::move(rem));
}

UniPoly UniPoly::gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a.remainder(b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a * (Rational(1) / a.leading());
}

UniPoly UniPoly::squarefree_part() const {
  if (is_zero()) throw ContractError("squarefree part of zero polynomial");
  if (degree() == 0) return *this;
  UniPoly g = gcd(*this, derivative());
  if (g.degree() == 0) return *this;
  // Exact long division by g.
  std::vector<Rational> rem = coeffs_;
  int dg = g.degree();
  std::vector<Rational> quot(coeffs_.size() - static_cast<std::size_t>(dg), Rational(0));
  const Rational& lead = g.coeffs()[static_cast<std::size_t>(dg)];
  while (static_cast<int>(rem.size()) - 1 >= dg) {
    Rational factor = rem.back() / lead;
    std::size_t shift = rem.size() - 1 - static_cast<std::size_t>(dg);
    quot[shift] = factor;
    for (int i = 0; i <= dg; ++i) rem[shift + static_cast<std::size_t>(i)] -= factor * g.coeffs()[static_cast<std::size_t>(i)];
    rem.pop_back();
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
  }
  if (!rem.empty()) throw ContractError("squarefree division left a remainder");
  return UniPoly(std::move(quot));
}

UniPoly UniPoly::deflate(const Rational& root) const {
  if (is_zero()) throw ContractError("deflating zero polynomial");
  // Synthetic division by (t - root).
  std::vector<Rational> q(coeffs_.size() - 1, Rational(0));
  Rational carry(0);
  for (std::size_t i = coeffs_.size(); i-- > 1;) {
    carry = coeffs_[i] + carry * root;
    q[i - 1] = carry;
  }
  Rational rem = coeffs_[0] + carry * root;
  if (rem != 0) throw ContractError("deflation point is not a root");
  return UniPoly(std::move(q));
}

Rational UniPoly::cauchy_bound() const {
  if (is_zero()) throw ContractError("root bound of zero polynomial");
  Rational m(0);
  const Rational& lead = coeffs_.back();
  for (std::size_t i = 0; i + 1 < coeffs_.size(); ++i) {
    Rational r = abs(coeffs_[i] / lead);
    if (r > m) m = r;
  }
  return m + 1;
}

SturmChain::SturmChain(const UniPoly& p) {
  if (p.is_zero()) throw ContractError("Sturm chain of zero polynomial");
  chain_.push_back(p);
  UniPoly d = p.derivative();
  if (!d.is_zero()) {
    chain_.push_back(d);
    while (true) {
      UniPoly r = chain_[chain_.size() - 2].remainder(chain_.back());
      if (r.is_zero()) break;
      chain_.push_back(-r);
    }
  }
}

namespace {
int count_variations(const std::vector<int>& signs) {
  int v = 0, last = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}
}  // namespace

int SturmChain::variations_at(const Rational& t) const {
  std::vector<int> signs;
  signs.reserve(chain_.size());
  for (const auto& q : chain_) signs.push_back(q.sign_at(t));
  return count_variations(signs);
}

int SturmChain::variations_at_minus_inf() const {
  std::vector<int> signs;
  signs.reserve(chain_.size());
  for (const auto& q : chain_) signs.push_back(q.sign_at_minus_inf());
  return count_variations(signs);
}

int SturmChain::variations_at_plus_inf() const {
  std::vector<int> signs;
  signs.reserve(chain_.size());
  for (const auto& q : chain_) signs.push_back(q.sign_at_plus_inf());
  return count_variations(signs);
}

int SturmChain::count_distinct_real_roots() const {
  return variations_at_minus_inf() - variations_at_plus_inf();
}

int SturmChain::count_roots_in(const Rational& a, const Rational& b) const {
  if (a > b) throw ContractError("count_roots_in: empty interval");
  return variations_at(a) - variations_at(b);
}

namespace {

// Recursive bisection on a squarefree polynomial. Endpoints are never roots.
// Rational roots are caught either at a midpoint or by the simplest-rational
// probe, in which case they are deflated out by the caller.
struct Isolator {
  const UniPoly& q;
  const SturmChain& chain;
  std::vector<RootInterval> out;
  bool found_exact_root = false;
  Rational exact_root;

  void isolate(const Rational& a, const Rational& b, int va, int vb) {
    if (found_exact_root) return;
    int k = va - vb;
    if (k == 0) return;
    if (k == 1) {
      refine(a, b);
      return;
    }
    Rational m = (a + b) / 2;
    if (q.evaluate(m) == 0) {
      found_exact_root = true;
      exact_root = m;
      return;
    }
    int vm = chain.variations_at(m);
    isolate(a, m, va, vm);
    isolate(m, b, vm, vb);
  }

  // One simple root inside (a, b). Narrow the interval by sign bisection and
  // probe the simplest rational each round; a rational root with denominator
  // up to roughly 2^24 is detected exactly.
  void refine(Rational a, Rational b) {
    int sa = q.sign_at(a);
    if (sa * q.sign_at(b) >= 0)
      throw ContractError("root isolation lost a sign change");
    for (int round = 0; round < 48; ++round) {
      Rational s = simplest_rational_between(a, b);
      if (q.evaluate(s) == 0) {
        found_exact_root = true;
        exact_root = s;
        return;
      }
      Rational m = (a + b) / 2;
      if (q.evaluate(m) == 0) {
        found_exact_root = true;
        exact_root = m;
        return;
      }
      if (q.sign_at(m) == sa)
        a = m;
      else
        b = m;
    }
    out.push_back({a, b, false});
  }
};

}  // namespace

namespace {

struct DiscoveredRoot {
  Rational root;
};

// Shrinks (a, b), which holds exactly one root of work, until the closed
// interval [a, b] avoids every entry of banned. Keeps endpoints off roots of
// work; a probe landing on an undetected rational root aborts via
// DiscoveredRoot so the caller can deflate and start over.
RootInterval exclude_points(const UniPoly& work, const SturmChain& chain, Rational a, Rational b,
                            const std::vector<Rational>& banned) {
  auto is_banned = [&](const Rational& t) {
    for (const auto& r : banned)
      if (r == t) return true;
    return false;
  };
  // A point strictly inside (lo, hi), neither banned nor a root of work.
  auto probe = [&](const Rational& lo, const Rational& hi) {
    Rational m = (lo + hi) / 2;
    while (is_banned(m)) m = (lo + m) / 2;
    if (work.evaluate(m) == 0) throw DiscoveredRoot{m};
    return m;
  };
  auto root_in = [&](const Rational& lo, const Rational& hi) {
    return chain.variations_at(lo) - chain.variations_at(hi) == 1;
  };
  while (is_banned(a)) {
    Rational c = probe(a, b);
    if (root_in(c, b))
      a = c;
    else
      b = c;  // root is in (a, c); retry with a tighter probe toward a
  }
  while (is_banned(b)) {
    Rational c = probe(a, b);
    if (root_in(a, c))
      b = c;
    else
      a = c;
  }
  auto contains_banned_inside = [&] {
    for (const auto& r : banned)
      if (a < r && r < b) return true;
    return false;
  };
  while (contains_banned_inside()) {
    Rational c = probe(a, b);
    if (root_in(a, c))
      b = c;
    else
      a = c;
  }
  if (work.sign_at(a) * work.sign_at(b) >= 0)
    throw ContractError("interval refinement lost its sign change");
  return {a, b, false};
}

}  // namespace

std::vector<RootInterval> isolate_real_roots(const UniPoly& p) {
  if (p.is_zero()) throw ContractError("cannot isolate roots of zero polynomial");
  std::vector<Rational> exact_roots;
  UniPoly work = p.squarefree_part();
  while (work.degree() > 0) {
    SturmChain chain(work);
    Rational b = work.cauchy_bound();
    Isolator iso{work, chain, {}, false, Rational(0)};
    iso.isolate(-b, b, chain.variations_at(-b), chain.variations_at(b));
    if (iso.found_exact_root) {
      exact_roots.push_back(iso.exact_root);
      work = work.deflate(iso.exact_root);
      continue;
    }
    // No rational root encountered in this pass. Shrink the sign-change
    // intervals away from the deflated rational roots so that each final
    // interval holds exactly one root of the squarefree part of p, then
    // separate any touching neighbors; a late rational-root discovery
    // restarts the pass after deflation.
    try {
      std::vector<RootInterval> result;
      for (const auto& r : exact_roots) result.push_back({r, r, true});
      for (const auto& iv : iso.out)
        result.push_back(exclude_points(work, chain, iv.lo, iv.hi, exact_roots));
      std::sort(result.begin(), result.end(),
                [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
      auto bisect_once = [&](RootInterval& iv) {
        if (iv.exact) return;
        Rational m = (iv.lo + iv.hi) / 2;
        if (work.evaluate(m) == 0) throw DiscoveredRoot{m};
        if (work.sign_at(m) == work.sign_at(iv.lo))
          iv.lo = m;
        else
          iv.hi = m;
      };
      for (std::size_t i = 0; i + 1 < result.size(); ++i)
        while (!(result[i].hi < result[i + 1].lo)) {
          bisect_once(result[i]);
          bisect_once(result[i + 1]);
        }
      return result;
    } catch (const DiscoveredRoot& d) {
      exact_roots.push_back(d.root);
      work = work.deflate(d.root);
    }
  }
  std::vector<RootInterval> result;
  for (const auto& r : exact_roots) result.push_back({r, r, true});
  std::sort(result.begin(), result.end(),
            [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
  return result;
}

}  // namespace goodpair
