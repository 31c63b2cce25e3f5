#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "goodpair/manifolds.hpp"
#include "goodpair/rational.hpp"

namespace goodpair {

// Power-law instance: approximation weight q -> |q|^{-tau} and dimension
// function r -> r^s. Requires n > l >= 1, tau >= n, s > 0.
struct PowerLawData {
  std::size_t n = 0, l = 0;
  Rational tau;
  Rational s;
};

// s* = (n - l - 1) + (n + 1)/(tau + 1). The summability boundary: the shell
// series converges exactly for s above this value.
Rational critical_exponent(std::size_t n, std::size_t l, const Rational& tau);
// tau -> infinity limit of the same expression.
Rational critical_exponent_limit(std::size_t n, std::size_t l);

enum class SeriesClass { Convergent, Divergent, Critical };
std::string series_class_str(SeriesClass c);

// Exponent e with shell total comparable to Q^e:
// e = n - (tau + 1)(s + l + 1 - n).
Rational shell_exponent(const PowerLawData& d);

// Convergent iff e < -1, Divergent iff e > -1, Critical at equality. Exact.
SeriesClass classify_series(const PowerLawData& d);

// Number of integer vectors of sup norm exactly q in dimension n:
// (2q+1)^n - (2q-1)^n.
Integer shell_count(std::size_t n, std::uint64_t q);

// Exact value of one shell: shell_count(n, q) times the per-vector term
// q^(n-l) * q^(-tau(l+1-n)) * q^(-(tau+1)s). The combined exponent must be
// an integer; fractional powers of q would leave the rationals.
Rational shell_term(const PowerLawData& d, std::uint64_t q);

// Partial sums T(1), ..., T(q_max) of the shell series, exact. q_max is
// capped at 10000; larger sums carry denominators past any sensible budget.
std::vector<Rational> series_oracle(const PowerLawData& d, std::size_t q_max);

// Exact membership of x in the target slab for index (q, p): checks
// |q . (x, g(x)) - p - theta| < |q|^(-tau) with sup-norm |q|, by clearing
// the fractional power of tau.
bool sq_p_membership(const std::vector<Rational>& x, const ManifoldSpec& spec,
                     const std::vector<std::int64_t>& q, std::int64_t p, const Rational& theta,
                     const Rational& tau);

// phi(y) = a + r . y + y . h . y / 2 with symmetric h.
struct QuadraticFunction {
  Rational a;
  std::vector<Rational> r;
  std::vector<std::vector<Rational>> h;
};

Rational qf_value(const QuadraticFunction& f, const std::vector<Rational>& y);
std::vector<Rational> qf_gradient(const QuadraticFunction& f, const std::vector<Rational>& y);

// phi(y) = a + r . y + sum_u weights[u] * g_u(y) for the system's forms.
QuadraticFunction probe_function(const QuadraticSystem& sys, const std::vector<Rational>& weights,
                                 const std::vector<Rational>& r, const Rational& a);

// Covering experiment around one center: the slab
// S = { y in B(center, alpha) : |phi(y)| < |grad phi(center)| * delta }
// is met by roughly (alpha/delta)^(dim-1) cells of a delta-grid when the
// gradient dominates the curvature over the ball.
struct CoverProbe {
  QuadraticFunction phi;
  std::vector<Rational> center;
  Rational alpha;
  // Gradient-dominance factor: the probe reports (and in strict mode
  // requires) |grad phi(center)| >= c * alpha * |hess phi|.
  Rational c = Rational(4);
  bool strict = false;
};

struct CoverCount {
  std::uint64_t cells = 0;  // delta-cells whose interval hull meets the slab
  std::uint64_t cells_per_axis = 0;
  bool precondition_ok = false;
};

// Counts delta-grid cells of the box around the center whose exact interval
// evaluation of phi meets the slab threshold. delta must divide 2*alpha
// evenly. In strict mode a failed gradient-dominance check throws; by
// default it is only reported.
CoverCount covering_count(const CoverProbe& probe, const Rational& delta);

struct CoverSlope {
  std::vector<Rational> deltas;
  std::vector<CoverCount> rungs;
  double slope = 0;  // least-squares fit of log(cells) against log(alpha/delta)
};

// Runs the dyadic ladder delta = alpha * 2^-k for k = k_min..k_max and fits
// the growth exponent of the cell counts.
CoverSlope covering_slope(const CoverProbe& probe, unsigned k_min = 3, unsigned k_max = 9);

}  // namespace goodpair
