#include "goodpair/manifolds.hpp"

#include <utility>

#include "goodpair/errors.hpp"

namespace goodpair {

namespace {

void require_shape(const QuadraticSystem& sys) {
  if (sys.l == 0 || sys.dim == 0) throw ContractError("quadratic system needs l >= 1, dim >= 1");
  if (sys.forms.size() != sys.l) throw ContractError("quadratic system holds the wrong form count");
  for (std::size_t u = 0; u < sys.l; ++u) {
    if (sys.forms[u].size() != sys.dim)
      throw ContractError("Hessian " + std::to_string(u + 1) + " has the wrong row count");
    for (std::size_t i = 0; i < sys.dim; ++i)
      if (sys.forms[u][i].size() != sys.dim)
        throw ContractError("Hessian " + std::to_string(u + 1) + " is not square");
    for (std::size_t i = 0; i < sys.dim; ++i)
      for (std::size_t j = i + 1; j < sys.dim; ++j)
        if (sys.forms[u][i][j] != sys.forms[u][j][i])
          throw ContractError("Hessian " + std::to_string(u + 1) + " is not symmetric");
  }
}

ManifoldSpec spec_of(QuadraticSystem sys, std::string label) {
  ManifoldSpec m;
  m.l = sys.l;
  m.n = sys.dim + sys.l;
  m.system = std::move(sys);
  m.label = std::move(label);
  return m;
}

// One twisted plane block: g1 restricted to it is x^2 - y^2 + delta x y,
// g2 is x^2 - y^2, so the Hessian blocks are [[2, d],[d, -2]] and
// [[2, 0],[0, -2]].
void fill_plane(QuadraticSystem& sys, std::size_t block, const Rational& delta) {
  std::size_t x = 2 * block, y = 2 * block + 1;
  sys.forms[0][x][x] = 2;
  sys.forms[0][y][y] = -2;
  sys.forms[0][x][y] = delta;
  sys.forms[0][y][x] = delta;
  sys.forms[1][x][x] = 2;
  sys.forms[1][y][y] = -2;
}

}  // namespace

QuadraticSystem zero_system(std::size_t l, std::size_t dim) {
  if (l == 0 || dim == 0) throw ContractError("quadratic system needs l >= 1, dim >= 1");
  QuadraticSystem sys;
  sys.l = l;
  sys.dim = dim;
  sys.forms.assign(l, std::vector<std::vector<Rational>>(dim, std::vector<Rational>(dim, Rational(0))));
  return sys;
}

QuadraticSystem build_quadratic_system(const SymbolicMatrix& m) {
  std::vector<LinearForm> identity;
  for (std::size_t v = 0; v < m.var_count(); ++v)
    identity.push_back(LinearForm::unit(m.var_count(), v));
  return build_quadratic_system(m, identity);
}

QuadraticSystem build_quadratic_system(const SymbolicMatrix& m,
                                       const std::vector<LinearForm>& images) {
  SymbolicMatrix prime = build_m_prime(m, images);  // validates independence
  QuadraticSystem sys = zero_system(m.var_count(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i; j < m.size(); ++j)
      for (std::size_t u = 0; u < sys.l; ++u) {
        const Rational& c = prime.at(i, j).coeff(u);
        sys.forms[u][i][j] = c;
        sys.forms[u][j][i] = c;
      }
  return sys;
}

SymbolicMatrix lambda_matrix(const QuadraticSystem& sys) {
  require_shape(sys);
  SymbolicMatrix m(sys.l, sys.dim);
  for (std::size_t i = 0; i < sys.dim; ++i)
    for (std::size_t j = i; j < sys.dim; ++j) {
      LinearForm f(sys.l);
      for (std::size_t u = 0; u < sys.l; ++u) f.set_coeff(u, sys.forms[u][i][j]);
      m.set(i, j, f);
    }
  return m;
}

DefinitenessVerdict check_condition_II(const QuadraticSystem& sys, const Budget& budget,
                                       unsigned workers) {
  return decide(det_symbolic(lambda_matrix(sys)), budget, workers);
}

Ex1Coefficients ex1_coefficients(const QuadraticSystem& sys) {
  require_shape(sys);
  if (sys.l != 2 || sys.dim != 2)
    throw ContractError("the discriminant decomposition needs two forms on a 2-dimensional space");
  const auto& h1 = sys.forms[0];
  const auto& h2 = sys.forms[1];
  Ex1Coefficients c;
  c.a1 = h1[0][0] * h1[1][1] - h1[0][1] * h1[0][1];
  c.a2 = h2[0][0] * h2[1][1] - h2[0][1] * h2[0][1];
  c.a3 = h1[0][0] * h2[1][1] - 2 * h1[0][1] * h2[0][1] + h2[0][0] * h1[1][1];
  return c;
}

bool ex1_criterion_holds(const Ex1Coefficients& c) { return c.a3 * c.a3 < 4 * c.a1 * c.a2; }

ManifoldSpec m_delta(const Rational& delta) {
  if (delta == 0)
    throw ContractError(
        "delta must be nonzero: without the twist the two forms share every zero and the "
        "determinant pencil is a semidefinite square");
  QuadraticSystem sys = zero_system(2, 2);
  fill_plane(sys, 0, delta);
  return spec_of(std::move(sys), "M-delta(" + rational_str(delta) + ")");
}

ManifoldSpec e2_manifold(const std::vector<Rational>& deltas) {
  if (deltas.empty()) throw ContractError("the plane-sum family needs at least one block");
  for (const Rational& d : deltas)
    if (d == 0)
      throw ContractError(
          "every delta must be nonzero: an untwisted plane makes its factor of the determinant "
          "pencil a semidefinite square");
  QuadraticSystem sys = zero_system(2, 2 * deltas.size());
  std::string label = "e2(";
  for (std::size_t b = 0; b < deltas.size(); ++b) {
    fill_plane(sys, b, deltas[b]);
    label += (b ? "," : "") + rational_str(deltas[b]);
  }
  return spec_of(std::move(sys), label + ")");
}

namespace {

SymbolicMatrix pair37_matrix() {
  return SymbolicMatrix::from_alphabet_codes(3, 4, {1, 2, 3, -3, -1, 3, 3, 1, 2, -1});
}

}  // namespace

ManifoldSpec m37_manifold() {
  return spec_of(build_quadratic_system(pair37_matrix()), "M37");
}

ManifoldSpec m37_blocks(std::size_t extra_blocks) {
  SymbolicMatrix m = pair37_matrix();
  for (std::size_t t = 0; t < extra_blocks; ++t) m = block_compose(m, pair37_matrix());
  return spec_of(build_quadratic_system(m),
                 "M37x" + std::to_string(extra_blocks + 1));
}

std::vector<ManifoldSpec> example_catalog() {
  std::vector<ManifoldSpec> out;
  out.push_back(m_delta(1));
  out.push_back(e2_manifold({Rational(1), Rational(1)}));
  out.push_back(m37_manifold());
  out.push_back(m37_blocks(1));
  return out;
}

bool condition_I_gate(std::size_t n, std::size_t l, const Rational& s) {
  if (n <= l) throw ContractError("condition (I) gate requires n > l");
  return s < Rational(2 * (static_cast<long>(n - l) - 1));
}

PowerRange all_power_range(std::size_t n, std::size_t l) {
  if (n <= l) throw ContractError("power range requires n > l");
  PowerRange r;
  r.lo = Rational(static_cast<long>(n - l));
  r.hi = Rational(2 * (static_cast<long>(n - l) - 1));
  return r;
}

}  // namespace goodpair
