#pragma once

#include <vector>

#include "goodpair/poly.hpp"
#include "goodpair/rational.hpp"

namespace goodpair {

// Dense univariate polynomial over the rationals; coeffs()[i] multiplies t^i.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);

  // P(1, t) for a polynomial in exactly two variables.
  static UniPoly dehomogenize_second(const Poly& p);

  bool is_zero() const { return coeffs_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& leading() const;

  Rational evaluate(const Rational& t) const;
  int sign_at(const Rational& t) const { return sign(evaluate(t)); }
  int sign_at_plus_inf() const;
  int sign_at_minus_inf() const;

  UniPoly derivative() const;
  UniPoly operator-() const;
  UniPoly operator*(const Rational& c) const;
  bool operator==(const UniPoly& o) const { return coeffs_ == o.coeffs_; }

  // Euclidean remainder; divisor must be nonzero.
  UniPoly remainder(const UniPoly& divisor) const;
  // Monic greatest common divisor; gcd(0, 0) is 0.
  static UniPoly gcd(UniPoly a, UniPoly b);
  // this / gcd(this, this'); roots preserved, all simple.
  UniPoly squarefree_part() const;
  // Division by (t - root); requires that root is an exact root.
  UniPoly deflate(const Rational& root) const;

  // Strict bound: every real root r satisfies |r| < cauchy_bound().
  Rational cauchy_bound() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

// Sturm chain; counts distinct real roots. Valid for any nonzero polynomial.
class SturmChain {
 public:
  explicit SturmChain(const UniPoly& p);
  int variations_at(const Rational& t) const;
  int variations_at_minus_inf() const;
  int variations_at_plus_inf() const;
  int count_distinct_real_roots() const;
  // Roots in the half-open interval (a, b]; requires p(a) != 0 and p(b) != 0.
  int count_roots_in(const Rational& a, const Rational& b) const;

 private:
  std::vector<UniPoly> chain_;
};

// Isolating interval for one distinct real root. exact means lo == hi is the
// root itself; otherwise the squarefree part changes sign between lo and hi
// and neither endpoint is a root.
struct RootInterval {
  Rational lo, hi;
  bool exact = false;
};

// Disjoint isolating intervals for every distinct real root, ascending.
// Rational roots are detected exactly and returned as point intervals.
std::vector<RootInterval> isolate_real_roots(const UniPoly& p);

}  // namespace goodpair
