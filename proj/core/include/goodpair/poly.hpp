#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "goodpair/rational.hpp"

namespace goodpair {

// Exponent vector over a fixed variable count.
class Monomial {
 public:
  explicit Monomial(std::size_t var_count) : exps_(var_count, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {}
  static Monomial unit(std::size_t var_count, std::size_t var, std::uint32_t exp = 1);

  std::size_t var_count() const { return exps_.size(); }
  std::uint32_t exponent(std::size_t v) const { return exps_[v]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }
  std::uint32_t total_degree() const;

  Monomial operator*(const Monomial& o) const;
  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }

 private:
  std::vector<std::uint32_t> exps_;
};

// Graded lexicographic term order, leading terms first: higher total degree
// precedes lower; within a degree, lexicographically larger exponent vectors
// precede smaller.
struct TermOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class LinearForm;

// Sparse multivariate polynomial with exact rational coefficients.
// Terms are kept in canonical order with no zero coefficients, so structural
// equality is polynomial equality.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, TermOrder>;

  explicit Poly(std::size_t var_count = 0) : vars_(var_count) {}
  static Poly constant(std::size_t var_count, const Rational& c);
  static Poly variable(std::size_t var_count, std::size_t v);
  static Poly from_terms(std::size_t var_count,
                         const std::vector<std::pair<Monomial, Rational>>& terms);

  std::size_t var_count() const { return vars_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  Rational coefficient(const Monomial& m) const;
  // Max total degree over terms; 0 for the zero polynomial.
  std::uint32_t degree() const;
  // d if every term has total degree d (zero polynomial: 0); nullopt otherwise.
  std::optional<std::uint32_t> homogeneity_degree() const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly operator*(const Rational& c) const;
  bool operator==(const Poly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  // Ring homomorphism sending variable v to images[v]. All images must share
  // a common variable count, which becomes the result's.
  Poly substitute(const std::vector<Poly>& images) const;
  // Substitution by linear forms; images live in a common target space.
  Poly substitute_linear(const std::vector<LinearForm>& images) const;
  Rational evaluate(const std::vector<Rational>& point) const;

  // Exact division; throws ContractError when the divisor does not divide
  // this polynomial exactly.
  Poly divide_exact(const Poly& divisor) const;

  // Human-readable rendering like "z1^2 + 2*z1*z2 - 1/2*z3^4"; "0" when zero.
  std::string to_text(const std::string& var_prefix = "z") const;

  // Content hash, stable across runs.
  std::uint64_t content_hash() const;

  void add_term(const Monomial& m, const Rational& c);

 private:
  std::size_t vars_;
  TermMap terms_;
};

inline Poly operator*(const Rational& c, const Poly& p) { return p * c; }

// Rational linear combination of variables, the entry type of symbolic
// matrices. No constant part.
class LinearForm {
 public:
  explicit LinearForm(std::size_t var_count = 0) : coeffs_(var_count, Rational(0)) {}
  explicit LinearForm(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {}
  static LinearForm unit(std::size_t var_count, std::size_t v, int sgn = 1);

  std::size_t var_count() const { return coeffs_.size(); }
  const Rational& coeff(std::size_t v) const { return coeffs_[v]; }
  void set_coeff(std::size_t v, const Rational& c) { coeffs_[v] = c; }
  bool is_zero() const;

  LinearForm operator-() const;
  LinearForm operator+(const LinearForm& o) const;
  LinearForm operator-(const LinearForm& o) const;
  LinearForm operator*(const Rational& c) const;
  bool operator==(const LinearForm& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const LinearForm& o) const { return !(*this == o); }

  Rational evaluate(const std::vector<Rational>& point) const;
  Poly to_poly() const;

  // Renders like "z1", "-z3", "2*z1 - 1/2*z2"; "0" when zero.
  std::string to_text(const std::string& var_prefix = "z") const;

 private:
  std::vector<Rational> coeffs_;
};

// Inverse of LinearForm::to_text. Accepts sums of signed terms like
// "z1", "-z3 + z1", "2*z1 - 1/2*z2", and "0"; any alphabetic prefix is
// allowed before the 1-based variable index. Nonzero constant terms and
// indices outside [1, var_count] are rejected with ParseError.
LinearForm parse_linear_form(const std::string& text, std::size_t var_count);

}  // namespace goodpair
