#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "goodpair/definiteness.hpp"
#include "goodpair/matrices.hpp"
#include "goodpair/poly.hpp"
#include "goodpair/rational.hpp"

namespace goodpair {

// l quadratic forms on dim-dimensional space, stored through their Hessians:
// g_u(x) = x . H_u . x / 2, so forms[u][i][j] is the (i,j) second derivative
// of g_u. Every H_u is symmetric.
struct QuadraticSystem {
  std::size_t l = 0, dim = 0;
  std::vector<std::vector<std::vector<Rational>>> forms;
};

// All-zero system of the given shape.
QuadraticSystem zero_system(std::size_t l, std::size_t dim);

// The graph surface (x, g_1(x), ..., g_l(x)) in dimension n = dim + l.
struct ManifoldSpec {
  std::size_t n = 0, l = 0;
  QuadraticSystem system;
  std::string label;
};

// Reads the quadratic system off a symbolic matrix: H_u[i][j] is the
// z_u-coefficient of entry (i,j) after substituting z_v -> images[v].
// The one-argument form uses the identity substitution. Dependent images
// are rejected, since they collapse the pencil.
QuadraticSystem build_quadratic_system(const SymbolicMatrix& m);
QuadraticSystem build_quadratic_system(const SymbolicMatrix& m,
                                       const std::vector<LinearForm>& images);

// Inverse direction: the dim x dim matrix of linear forms whose (i,j) entry
// has s_u-coefficient forms[u][i][j]. For quadratic g the Hessians are
// constant, so this single matrix covers every base point.
SymbolicMatrix lambda_matrix(const QuadraticSystem& sys);

// decide() on det_symbolic(lambda_matrix(sys)). A definite answer holds on
// the whole space; there is no exceptional set to carve out.
DefinitenessVerdict check_condition_II(const QuadraticSystem& sys, const Budget& budget = {},
                                       unsigned workers = 1);

// Coefficients of det(s1 H1 + s2 H2) = a1 s1^2 + a2 s2^2 + a3 s1 s2 for a
// two-form system on a 2-dimensional space.
struct Ex1Coefficients {
  Rational a1, a2, a3;
};
Ex1Coefficients ex1_coefficients(const QuadraticSystem& sys);

// The discriminant test: a3^2 < 4 a1 a2 iff the determinant pencil above is
// definite (it never vanishes on s != 0).
bool ex1_criterion_holds(const Ex1Coefficients& c);

// Twisted hyperbolic pair on the plane: g1 = x^2 - y^2 + delta x y,
// g2 = x^2 - y^2. Rejects delta = 0, where the two forms coincide up to the
// missing twist and the determinant pencil degenerates to a semidefinite
// square.
ManifoldSpec m_delta(const Rational& delta);

// Direct sum of t twisted planes sharing the two form slots: dimension 2t,
// determinant pencil a product of the per-plane pencils. Every delta must be
// nonzero for the same reason as above.
ManifoldSpec e2_manifold(const std::vector<Rational>& deltas);

// The size-4 system with determinant pencil (s1^2+s2^2)^2 + 4 s3^4.
ManifoldSpec m37_manifold();

// extra_blocks additional copies of the size-4 system glued block-diagonally:
// three forms on dimension 4(extra_blocks+1).
ManifoldSpec m37_blocks(std::size_t extra_blocks);

// One representative of each constructor above, at default parameters.
std::vector<ManifoldSpec> example_catalog();

// True iff s < 2(n - l - 1), the growth cap on admissible dimension
// functions. Requires n > l.
bool condition_I_gate(std::size_t n, std::size_t l, const Rational& s);

// The half-open admissible range [n-l, 2(n-l-1)); empty whenever n - l < 3.
struct PowerRange {
  Rational lo, hi;
  bool empty() const { return hi <= lo; }
  bool contains(const Rational& s) const { return lo <= s && s < hi; }
};
PowerRange all_power_range(std::size_t n, std::size_t l);

}  // namespace goodpair
