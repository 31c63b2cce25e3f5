#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "goodpair/matrices.hpp"
#include "goodpair/poly.hpp"
#include "goodpair/rational.hpp"

namespace testutil {

inline goodpair::Rational Q(const std::string& s) { return goodpair::parse_rational(s); }

inline std::vector<goodpair::Rational> point(const std::vector<std::string>& coords) {
  std::vector<goodpair::Rational> p;
  p.reserve(coords.size());
  for (const auto& c : coords) p.push_back(Q(c));
  return p;
}

// Terms given as (exponent vector, coefficient literal).
inline goodpair::Poly make_poly(
    std::size_t vars,
    const std::vector<std::pair<std::vector<std::uint32_t>, std::string>>& terms) {
  goodpair::Poly p(vars);
  for (const auto& [exps, coeff] : terms)
    p.add_term(goodpair::Monomial(std::vector<std::uint32_t>(exps)), Q(coeff));
  return p;
}

inline goodpair::Poly random_poly(goodpair::Rng& rng, std::size_t vars, std::uint32_t max_deg,
                                  std::size_t max_terms) {
  goodpair::Poly p(vars);
  std::size_t terms = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(max_terms)));
  for (std::size_t t = 0; t < terms; ++t) {
    std::vector<std::uint32_t> exps(vars, 0);
    std::uint32_t budget = max_deg;
    for (std::size_t v = 0; v < vars; ++v) {
      std::uint32_t e = static_cast<std::uint32_t>(rng.uniform_int(0, budget));
      exps[v] = e;
      budget -= e;
    }
    p.add_term(goodpair::Monomial(std::move(exps)), rng.uniform_rational(6, 4));
  }
  return p;
}

// Homogeneous variant: every term gets total degree exactly deg.
inline goodpair::Poly random_homogeneous_poly(goodpair::Rng& rng, std::size_t vars,
                                              std::uint32_t deg, std::size_t max_terms) {
  goodpair::Poly p(vars);
  std::size_t terms = 1 + static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(max_terms) - 1));
  for (std::size_t t = 0; t < terms; ++t) {
    std::vector<std::uint32_t> exps(vars, 0);
    for (std::uint32_t d = 0; d < deg; ++d)
      exps[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(vars) - 1))]++;
    p.add_term(goodpair::Monomial(std::move(exps)), rng.uniform_rational(6, 4));
  }
  return p;
}

// Frozen reference forms used across suites.
inline goodpair::Poly quartic_sum_form() {
  // (z1^2 + z2^2)^2 + 4*z3^4, expanded.
  return make_poly(3, {{{4, 0, 0}, "1"}, {{2, 2, 0}, "2"}, {{0, 4, 0}, "1"}, {{0, 0, 4}, "4"}});
}

inline goodpair::Poly negative_pair_form() {
  // -z1^2 - z2^2
  return make_poly(2, {{{2, 0}, "-1"}, {{0, 2}, "-1"}});
}

// [[z1, z2], [z2, -z1]], determinant -z1^2 - z2^2.
inline goodpair::SymbolicMatrix pair24() {
  return goodpair::SymbolicMatrix::from_alphabet_codes(2, 2, {1, 2, -1});
}

// Size-4 matrix in three variables with determinant quartic_sum_form().
inline goodpair::SymbolicMatrix pair37() {
  return goodpair::SymbolicMatrix::from_alphabet_codes(3, 4,
                                                       {1, 2, 3, -3, -1, 3, 3, 1, 2, -1});
}

inline goodpair::SymbolicMatrix random_alphabet_matrix(goodpair::Rng& rng, std::size_t vars,
                                                       std::size_t size) {
  std::vector<int> codes;
  for (std::size_t k = 0; k < size * (size + 1) / 2; ++k)
    codes.push_back(static_cast<int>(
        rng.uniform_int(-static_cast<std::int64_t>(vars), static_cast<std::int64_t>(vars))));
  return goodpair::SymbolicMatrix::from_alphabet_codes(vars, size, codes);
}

// Applies one orbit move: simultaneous row/column permutation sigma, diagonal
// sign conjugation d, variable permutation tau, variable sign flips f.
inline goodpair::SymbolicMatrix apply_orbit_move(const goodpair::SymbolicMatrix& m,
                                                 const std::vector<std::size_t>& sigma,
                                                 const std::vector<int>& d,
                                                 const std::vector<std::size_t>& tau,
                                                 const std::vector<int>& f) {
  std::size_t s = m.size(), l = m.var_count();
  goodpair::SymbolicMatrix r(l, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = i; j < s; ++j) {
      const goodpair::LinearForm& src = m.at(sigma[i], sigma[j]);
      goodpair::LinearForm g(l);
      for (std::size_t v = 0; v < l; ++v)
        g.set_coeff(tau[v], src.coeff(v) * goodpair::Rational(f[v] * d[i] * d[j]));
      r.set(i, j, g);
    }
  return r;
}

inline goodpair::SymbolicMatrix random_orbit_move(goodpair::Rng& rng,
                                                  const goodpair::SymbolicMatrix& m) {
  std::size_t s = m.size(), l = m.var_count();
  std::vector<std::size_t> sigma(s), tau(l);
  for (std::size_t i = 0; i < s; ++i) sigma[i] = i;
  for (std::size_t v = 0; v < l; ++v) tau[v] = v;
  for (std::size_t i = s; i > 1; --i)
    std::swap(sigma[i - 1], sigma[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1))]);
  for (std::size_t v = l; v > 1; --v)
    std::swap(tau[v - 1], tau[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(v) - 1))]);
  std::vector<int> d(s), f(l);
  for (std::size_t i = 0; i < s; ++i) d[i] = rng.uniform_int(0, 1) ? 1 : -1;
  for (std::size_t v = 0; v < l; ++v) f[v] = rng.uniform_int(0, 1) ? 1 : -1;
  return apply_orbit_move(m, sigma, d, tau, f);
}

}  // namespace testutil
