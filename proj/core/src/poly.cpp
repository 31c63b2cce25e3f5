#include "goodpair/poly.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "goodpair/errors.hpp"

namespace goodpair {

Monomial Monomial::unit(std::size_t var_count, std::size_t var, std::uint32_t exp) {
  if (var >= var_count) throw DimensionError("monomial variable index out of range");
  Monomial m(var_count);
  m.exps_[var] = exp;
  return m;
}

std::uint32_t Monomial::total_degree() const {
  std::uint32_t d = 0;
  for (auto e : exps_) d += e;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  if (exps_.size() != o.exps_.size()) throw DimensionError("monomial variable counts differ");
  Monomial r(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] = exps_[i] + o.exps_[i];
  return r;
}

bool TermOrder::operator()(const Monomial& a, const Monomial& b) const {
  std::uint32_t da = a.total_degree(), db = b.total_degree();
  if (da != db) return da > db;
  return a.exponents() > b.exponents();
}

Poly Poly::constant(std::size_t var_count, const Rational& c) {
  Poly p(var_count);
  p.add_term(Monomial(var_count), c);
  return p;
}

Poly Poly::variable(std::size_t var_count, std::size_t v) {
  Poly p(var_count);
  p.add_term(Monomial::unit(var_count, v), Rational(1));
  return p;
}

Poly Poly::from_terms(std::size_t var_count,
                      const std::vector<std::pair<Monomial, Rational>>& terms) {
  Poly p(var_count);
  for (const auto& [m, c] : terms) {
    if (m.var_count() != var_count) throw DimensionError("term variable count mismatch");
    p.add_term(m, c);
  }
  return p;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (m.var_count() != vars_) throw DimensionError("term variable count mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Poly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::uint32_t Poly::degree() const {
  // Leading term has maximal total degree under the graded order.
  return terms_.empty() ? 0 : terms_.begin()->first.total_degree();
}

std::optional<std::uint32_t> Poly::homogeneity_degree() const {
  if (terms_.empty()) return 0;
  std::uint32_t d = terms_.begin()->first.total_degree();
  // Graded order: last term has minimal degree, so check it alone.
  if (terms_.rbegin()->first.total_degree() != d) return std::nullopt;
  return d;
}

Poly Poly::operator-() const {
  Poly r(vars_);
  for (const auto& [m, c] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, -c);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (vars_ != o.vars_) throw DimensionError("polynomial variable counts differ");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (vars_ != o.vars_) throw DimensionError("polynomial variable counts differ");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  r += o;
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  r -= o;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  if (vars_ != o.vars_) throw DimensionError("polynomial variable counts differ");
  Poly r(vars_);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly Poly::operator*(const Rational& c) const {
  Poly r(vars_);
  if (c == 0) return r;
  for (const auto& [m, k] : terms_) r.terms_.emplace_hint(r.terms_.end(), m, k * c);
  return r;
}

Poly Poly::substitute(const std::vector<Poly>& images) const {
  if (images.size() != vars_) throw DimensionError("substitution needs one image per variable");
  std::size_t target_vars = vars_ == 0 ? 0 : images[0].var_count();
  for (const auto& img : images)
    if (img.var_count() != target_vars)
      throw DimensionError("substitution images live in different variable counts");
  // Image powers are cached; exponents in any one polynomial are small.
  std::vector<std::vector<Poly>> powers(vars_);
  auto power = [&](std::size_t v, std::uint32_t e) -> const Poly& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Poly::constant(target_vars, Rational(1)));
    while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
    return cache[e];
  };
  Poly r(target_vars);
  for (const auto& [m, c] : terms_) {
    Poly t = Poly::constant(target_vars, c);
    for (std::size_t v = 0; v < vars_; ++v)
      if (m.exponent(v) > 0) t = t * power(v, m.exponent(v));
    r += t;
  }
  return r;
}

Poly Poly::substitute_linear(const std::vector<LinearForm>& images) const {
  std::vector<Poly> polys;
  polys.reserve(images.size());
  for (const auto& f : images) polys.push_back(f.to_poly());
  return substitute(polys);
}

Rational Poly::evaluate(const std::vector<Rational>& point) const {
  if (point.size() != vars_) throw DimensionError("evaluation point has wrong variable count");
  std::vector<std::vector<Rational>> powers(vars_);
  auto power = [&](std::size_t v, std::uint32_t e) -> const Rational& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(Rational(1));
    while (cache.size() <= e) cache.push_back(cache.back() * point[v]);
    return cache[e];
  };
  Rational sum(0);
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t v = 0; v < vars_; ++v)
      if (m.exponent(v) > 0) t *= power(v, m.exponent(v));
    sum += t;
  }
  return sum;
}

// Long division by leading-term cancellation under the graded order. Only the
// exact case is supported; a nonzero remainder step throws.
Poly Poly::divide_exact(const Poly& divisor) const {
  if (vars_ != divisor.var_count()) throw DimensionError("polynomial variable counts differ");
  if (divisor.is_zero()) throw ContractError("division by zero polynomial");
  Poly rem = *this;
  Poly quot(vars_);
  const auto& lead = *divisor.terms().begin();
  while (!rem.is_zero()) {
    const auto& rlead = *rem.terms().begin();
    // rlead must be divisible by lead.
    Monomial q(vars_);
    {
      std::vector<std::uint32_t> exps(vars_);
      for (std::size_t v = 0; v < vars_; ++v) {
        std::uint32_t re = rlead.first.exponent(v), le = lead.first.exponent(v);
        if (re < le) throw ContractError("polynomial division is not exact");
        exps[v] = re - le;
      }
      q = Monomial(std::move(exps));
    }
    Rational qc = rlead.second / lead.second;
    Poly step(vars_);
    step.add_term(q, qc);
    quot += step;
    rem -= step * divisor;
    // Progress: the leading term of rem was cancelled, so the graded order
    // strictly decreases; termination follows.
  }
  return quot;
}

std::uint64_t Poly::content_hash() const {
  std::uint64_t h = kFnvOffset;
  hash_u64(h, vars_);
  for (const auto& [m, c] : terms_) {
    for (auto e : m.exponents()) hash_u64(h, e);
    hash_rational(h, c);
  }
  return h;
}

namespace {

std::string monomial_text(const Monomial& m, const std::string& var_prefix) {
  std::string s;
  for (std::size_t v = 0; v < m.var_count(); ++v) {
    std::uint32_t e = m.exponent(v);
    if (e == 0) continue;
    if (!s.empty()) s += "*";
    s += var_prefix + std::to_string(v + 1);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

}  // namespace

std::string Poly::to_text(const std::string& var_prefix) const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational a = abs(c);
    std::string mono = monomial_text(m, var_prefix);
    std::string coeff;
    if (mono.empty())
      coeff = rational_str(a);
    else if (a != 1)
      coeff = rational_str(a) + "*";
    if (first) {
      s += (sign(c) < 0 ? "-" : "") + coeff + mono;
      first = false;
    } else {
      s += (sign(c) < 0 ? " - " : " + ") + coeff + mono;
    }
  }
  return s;
}

LinearForm LinearForm::unit(std::size_t var_count, std::size_t v, int sgn) {
  if (v >= var_count) throw DimensionError("linear form variable index out of range");
  LinearForm f(var_count);
  f.coeffs_[v] = Rational(sgn);
  return f;
}

bool LinearForm::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

LinearForm LinearForm::operator-() const {
  LinearForm r(coeffs_.size());
  for (std::size_t v = 0; v < coeffs_.size(); ++v) r.coeffs_[v] = -coeffs_[v];
  return r;
}

LinearForm LinearForm::operator+(const LinearForm& o) const {
  if (coeffs_.size() != o.coeffs_.size()) throw DimensionError("linear form variable counts differ");
  LinearForm r(coeffs_.size());
  for (std::size_t v = 0; v < coeffs_.size(); ++v) r.coeffs_[v] = coeffs_[v] + o.coeffs_[v];
  return r;
}

LinearForm LinearForm::operator-(const LinearForm& o) const { return *this + (-o); }

LinearForm LinearForm::operator*(const Rational& c) const {
  LinearForm r(coeffs_.size());
  for (std::size_t v = 0; v < coeffs_.size(); ++v) r.coeffs_[v] = coeffs_[v] * c;
  return r;
}

Rational LinearForm::evaluate(const std::vector<Rational>& point) const {
  if (point.size() != coeffs_.size())
    throw DimensionError("evaluation point has wrong variable count");
  Rational sum(0);
  for (std::size_t v = 0; v < coeffs_.size(); ++v) sum += coeffs_[v] * point[v];
  return sum;
}

Poly LinearForm::to_poly() const {
  Poly p(coeffs_.size());
  for (std::size_t v = 0; v < coeffs_.size(); ++v)
    if (coeffs_[v] != 0) p.add_term(Monomial::unit(coeffs_.size(), v), coeffs_[v]);
  return p;
}

std::string LinearForm::to_text(const std::string& var_prefix) const {
  std::string s;
  bool first = true;
  for (std::size_t v = 0; v < coeffs_.size(); ++v) {
    const Rational& c = coeffs_[v];
    if (c == 0) continue;
    Rational a = abs(c);
    std::string term = var_prefix + std::to_string(v + 1);
    if (a != 1) term = rational_str(a) + "*" + term;
    if (first) {
      s += (sign(c) < 0 ? "-" : "") + term;
      first = false;
    } else {
      s += (sign(c) < 0 ? " - " : " + ") + term;
    }
  }
  return s.empty() ? "0" : s;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t'; }

void skip_space(const std::string& t, std::size_t& i) {
  while (i < t.size() && is_space(t[i])) ++i;
}

}  // namespace

LinearForm parse_linear_form(const std::string& text, std::size_t var_count) {
  LinearForm form(var_count);
  std::size_t i = 0;
  skip_space(text, i);
  if (i == text.size()) throw ParseError("empty linear form");
  bool first = true;
  while (i < text.size()) {
    int sgn = 1;
    if (text[i] == '+' || text[i] == '-') {
      sgn = text[i] == '-' ? -1 : 1;
      ++i;
      skip_space(text, i);
    } else if (!first) {
      throw ParseError("expected '+' or '-' between terms in \"" + text + "\"");
    }
    first = false;
    std::size_t start = i;
    // A term runs to the next top-level sign; '/' keeps rationals intact.
    while (i < text.size() && text[i] != '+' && text[i] != '-') ++i;
    std::string term = text.substr(start, i - start);
    while (!term.empty() && is_space(term.back())) term.pop_back();
    if (term.empty()) throw ParseError("dangling sign in \"" + text + "\"");

    Rational coeff(sgn);
    std::string var = term;
    std::size_t star = term.find('*');
    if (star != std::string::npos) {
      coeff = parse_rational(term.substr(0, star)) * sgn;
      var = term.substr(star + 1);
      std::size_t b = 0;
      skip_space(var, b);
      var = var.substr(b);
    }
    if (!var.empty() && std::isalpha(static_cast<unsigned char>(var[0]))) {
      std::size_t d = 0;
      while (d < var.size() && std::isalpha(static_cast<unsigned char>(var[d]))) ++d;
      if (d == var.size() || var.find_first_not_of("0123456789", d) != std::string::npos)
        throw ParseError("bad variable token \"" + var + "\"");
      unsigned long idx = std::stoul(var.substr(d));
      if (idx == 0 || idx > var_count)
        throw ParseError("variable index out of range in \"" + var + "\"");
      form.set_coeff(idx - 1, form.coeff(idx - 1) + coeff);
    } else {
      // Bare number: only a zero constant is a linear form.
      if (star != std::string::npos || parse_rational(var) * sgn != 0)
        throw ParseError("nonzero constant term in linear form \"" + text + "\"");
    }
    skip_space(text, i);
  }
  return form;
}

}  // namespace goodpair
