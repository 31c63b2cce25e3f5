#include "goodpair/matrices.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>

#include "goodpair/errors.hpp"

namespace goodpair {

SymbolicMatrix::SymbolicMatrix(std::size_t var_count, std::size_t size)
    : vars_(var_count), size_(size), entries_(size * size, LinearForm(var_count)) {}

const LinearForm& SymbolicMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= size_ || j >= size_) throw DimensionError("matrix index out of range");
  return entries_[i * size_ + j];
}

void SymbolicMatrix::set(std::size_t i, std::size_t j, const LinearForm& f) {
  if (i >= size_ || j >= size_) throw DimensionError("matrix index out of range");
  if (f.var_count() != vars_) throw DimensionError("entry variable count mismatch");
  entries_[i * size_ + j] = f;
  entries_[j * size_ + i] = f;
}

bool SymbolicMatrix::operator==(const SymbolicMatrix& o) const {
  return vars_ == o.vars_ && size_ == o.size_ && entries_ == o.entries_;
}

std::optional<std::vector<int>> SymbolicMatrix::alphabet_codes() const {
  std::vector<int> codes;
  codes.reserve(size_ * (size_ + 1) / 2);
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = i; j < size_; ++j) {
      const LinearForm& f = at(i, j);
      int code = 0;
      for (std::size_t v = 0; v < vars_; ++v) {
        const Rational& c = f.coeff(v);
        if (c == 0) continue;
        if (code != 0 || (c != 1 && c != -1)) return std::nullopt;
        code = (c == 1 ? 1 : -1) * static_cast<int>(v + 1);
      }
      codes.push_back(code);
    }
  return codes;
}

SymbolicMatrix SymbolicMatrix::from_alphabet_codes(std::size_t var_count, std::size_t size,
                                                   const std::vector<int>& upper_codes) {
  if (upper_codes.size() != size * (size + 1) / 2)
    throw DimensionError("wrong number of upper-triangle codes");
  SymbolicMatrix m(var_count, size);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = i; j < size; ++j) {
      int code = upper_codes[idx++];
      if (code == 0) continue;
      int v = std::abs(code) - 1;
      if (static_cast<std::size_t>(v) >= var_count)
        throw ContractError("alphabet code outside variable range");
      m.set(i, j, LinearForm::unit(var_count, static_cast<std::size_t>(v), code > 0 ? 1 : -1));
    }
  return m;
}

std::uint64_t SymbolicMatrix::content_hash() const {
  std::uint64_t h = kFnvOffset;
  hash_u64(h, vars_);
  hash_u64(h, size_);
  for (const auto& f : entries_)
    for (std::size_t v = 0; v < vars_; ++v) hash_rational(h, f.coeff(v));
  return h;
}

Poly det_cofactor_memo(const SymbolicMatrix& m) {
  std::size_t s = m.size(), l = m.var_count();
  if (s == 0) return Poly::constant(l, Rational(1));
  if (s > 16) throw ContractError("cofactor determinant limited to size 16");
  std::vector<Poly> entry(s * s, Poly(l));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) entry[i * s + j] = m.at(i, j).to_poly();

  // minor[mask] = det of rows 0..k-1 and the columns in mask (popcount k).
  std::vector<Poly> prev(1u << s, Poly(l)), cur(1u << s, Poly(l));
  prev[0] = Poly::constant(l, Rational(1));
  for (std::size_t k = 1; k <= s; ++k) {
    for (std::uint32_t mask = 0; mask < (1u << s); ++mask) {
      if (std::popcount(mask) != static_cast<int>(k)) continue;
      Poly acc(l);
      int t = 0;
      for (std::size_t j = 0; j < s; ++j) {
        if (!(mask & (1u << j))) continue;
        const Poly& e = entry[(k - 1) * s + j];
        if (!e.is_zero()) {
          Poly contrib = e * prev[mask ^ (1u << j)];
          if (((k - 1) + static_cast<std::size_t>(t)) % 2 == 0)
            acc += contrib;
          else
            acc -= contrib;
        }
        ++t;
      }
      cur[mask] = std::move(acc);
    }
    std::swap(prev, cur);
  }
  return prev[(1u << s) - 1];
}

Poly det_bareiss(const SymbolicMatrix& m) {
  std::size_t s = m.size(), l = m.var_count();
  if (s == 0) return Poly::constant(l, Rational(1));
  std::vector<std::vector<Poly>> a(s, std::vector<Poly>(s, Poly(l)));
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) a[i][j] = m.at(i, j).to_poly();

  int sign_flip = 1;
  Poly prev_pivot = Poly::constant(l, Rational(1));
  for (std::size_t k = 0; k + 1 < s; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < s && a[r][k].is_zero()) ++r;
      // Column k vanishes from the pivot down: determinant is zero.
      if (r == s) return Poly(l);
      std::swap(a[k], a[r]);
      sign_flip = -sign_flip;
    }
    for (std::size_t i = k + 1; i < s; ++i)
      for (std::size_t j = k + 1; j < s; ++j)
        a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]).divide_exact(prev_pivot);
    prev_pivot = a[k][k];
  }
  Poly det = a[s - 1][s - 1];
  return sign_flip > 0 ? det : -det;
}

Poly det_symbolic(const SymbolicMatrix& m) {
  return m.size() <= 8 ? det_cofactor_memo(m) : det_bareiss(m);
}

SymbolicMatrix block_compose(const SymbolicMatrix& a, const SymbolicMatrix& b) {
  if (a.var_count() != b.var_count())
    throw DimensionError("block composition requires a common variable count");
  SymbolicMatrix r(a.var_count(), a.size() + b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i; j < a.size(); ++j) r.set(i, j, a.at(i, j));
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i; j < b.size(); ++j) r.set(a.size() + i, a.size() + j, b.at(i, j));
  return r;
}

SymbolicMatrix specialize_vars(const SymbolicMatrix& m,
                               const std::vector<std::vector<std::size_t>>& classes) {
  std::size_t l = m.var_count();
  std::vector<bool> seen(l, false);
  for (const auto& cls : classes) {
    if (cls.empty()) throw ContractError("empty class in variable partition");
    for (std::size_t v : cls) {
      if (v >= l) throw ContractError("variable index out of range in partition");
      if (seen[v]) throw ContractError("variable repeated in partition");
      seen[v] = true;
    }
  }
  for (bool s : seen)
    if (!s) throw ContractError("partition does not cover all variables");

  std::vector<std::vector<std::size_t>> ordered = classes;
  std::sort(ordered.begin(), ordered.end(),
            [](const auto& x, const auto& y) {
              return *std::min_element(x.begin(), x.end()) < *std::min_element(y.begin(), y.end());
            });
  std::vector<std::size_t> target(l, 0);
  for (std::size_t k = 0; k < ordered.size(); ++k)
    for (std::size_t v : ordered[k]) target[v] = k;

  SymbolicMatrix r(ordered.size(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i; j < m.size(); ++j) {
      LinearForm f(ordered.size());
      for (std::size_t v = 0; v < l; ++v)
        f.set_coeff(target[v], f.coeff(target[v]) + m.at(i, j).coeff(v));
      r.set(i, j, f);
    }
  return r;
}

ObstructionReport obstruction_check(std::size_t l, std::size_t n) {
  if (l == 0) throw ContractError("variable count must be positive");
  if (n <= l) throw ContractError("obstruction check requires n > l");
  ObstructionReport rep;
  rep.l = l;
  rep.n = n;
  if (l == 1) {
    rep.status = ObstructionStatus::Passes;
    rep.detail = "single-variable determinants carry no parity or dimension constraint";
    return rep;
  }
  if ((n - l) % 2 == 1) {
    rep.status = ObstructionStatus::FailsParity;
    rep.detail = "determinant degree n-l is odd, so the form takes both signs";
    return rep;
  }
  if (n < 2 * l) {
    rep.status = ObstructionStatus::FailsDimension;
    rep.detail =
        "matrix size n-l is below the variable count l; a symmetric pencil in "
        "more variables than its dimension is singular somewhere off the origin";
    return rep;
  }
  rep.status = ObstructionStatus::Passes;
  rep.detail = "no structural obstruction";
  return rep;
}

namespace {

// Entry codes ordered for canonicalization: 0, +z1, -z1, +z2, -z2, ...
int code_ordinal(int code) {
  if (code == 0) return 0;
  return code > 0 ? 2 * code - 1 : -2 * code;
}

int ordinal_code(int ord) {
  if (ord == 0) return 0;
  return ord % 2 == 1 ? (ord + 1) / 2 : -(ord / 2);
}

struct CanonicalSearch {
  std::size_t s, l;
  std::vector<int> codes;  // full matrix, transformed by the current (tau, flips)
  std::vector<int> best;   // principal-minor-order ordinals; empty until first leaf
  std::vector<std::size_t> perm;
  std::vector<int> signs;
  std::vector<bool> used;
  std::vector<int> seq;

  int code_at(std::size_t i, std::size_t j) const { return codes[i * s + j]; }

  // Entries arrive column by column: (0,k), (1,k), ..., (k,k); the sequence
  // of their ordinals is minimized lexicographically.
  void descend(std::size_t k, bool tight) {
    if (k == s) {
      if (best.empty() || seq < best) best = seq;
      return;
    }
    std::size_t pos = k * (k + 1) / 2;
    for (std::size_t r = 0; r < s; ++r) {
      if (used[r]) continue;
      for (int d : {1, -1}) {
        bool ok = true, now_tight = tight;
        std::size_t write = pos;
        for (std::size_t i = 0; i <= k && ok; ++i) {
          int c;
          if (i == k)
            c = code_at(r, r);
          else {
            c = code_at(perm[i], r);
            if (signs[i] * d < 0) c = -c;
          }
          int o = code_ordinal(c);
          if (now_tight && !best.empty()) {
            if (o > best[write]) {
              ok = false;
              break;
            }
            if (o < best[write]) now_tight = false;
          }
          seq[write++] = o;
        }
        if (!ok) continue;
        used[r] = true;
        perm[k] = r;
        signs[k] = d;
        descend(k + 1, now_tight);
        used[r] = false;
      }
    }
  }
};

}  // namespace

SymbolicMatrix canonical_form(const SymbolicMatrix& m) {
  auto upper = m.alphabet_codes();
  if (!upper) throw ContractError("canonical form requires entries in {0, +z_v, -z_v}");
  std::size_t s = m.size(), l = m.var_count();
  if (s == 0) return m;

  // Expand to a full code matrix once.
  std::vector<int> base(s * s, 0);
  {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = i; j < s; ++j) {
        base[i * s + j] = (*upper)[idx];
        base[j * s + i] = (*upper)[idx];
        ++idx;
      }
  }

  std::vector<int> global_best;

  // Enumerate variable permutations and sign flips; for each, minimize over
  // row/column permutations and diagonal sign conjugation by backtracking.
  std::vector<std::size_t> tau(l);
  for (std::size_t v = 0; v < l; ++v) tau[v] = v;
  std::sort(tau.begin(), tau.end());
  do {
    for (std::uint32_t flips = 0; flips < (1u << l); ++flips) {
      // vmap[c + l] is the transformed code for c in [-l, l].
      std::vector<int> vmap(2 * l + 1, 0);
      for (std::size_t v = 0; v < l; ++v) {
        int image = static_cast<int>(tau[v]) + 1;
        int f = (flips >> v) & 1 ? -1 : 1;
        vmap[l + static_cast<std::size_t>(v) + 1] = f * image;
        vmap[l - static_cast<std::size_t>(v) - 1] = -f * image;
      }
      CanonicalSearch cs;
      cs.s = s;
      cs.l = l;
      cs.codes.resize(s * s);
      for (std::size_t i = 0; i < s * s; ++i)
        cs.codes[i] = vmap[static_cast<std::size_t>(base[i] + static_cast<int>(l))];
      cs.best = global_best;
      cs.perm.assign(s, 0);
      cs.signs.assign(s, 1);
      cs.used.assign(s, false);
      cs.seq.assign(s * (s + 1) / 2, 0);
      cs.descend(0, !cs.best.empty());
      if (!cs.best.empty() &&
          (global_best.empty() || cs.best < global_best))
        global_best = cs.best;
    }
  } while (std::next_permutation(tau.begin(), tau.end()));

  // Rebuild the matrix from the winning principal-minor-order sequence.
  SymbolicMatrix result(l, s);
  std::size_t pos = 0;
  for (std::size_t k = 0; k < s; ++k)
    for (std::size_t i = 0; i <= k; ++i) {
      int code = ordinal_code(global_best[pos++]);
      if (code != 0)
        result.set(i, k,
                   LinearForm::unit(l, static_cast<std::size_t>(std::abs(code) - 1),
                                    code > 0 ? 1 : -1));
    }
  return result;
}

std::string alphabet_id(const SymbolicMatrix& m) {
  auto codes = m.alphabet_codes();
  if (!codes) throw ContractError("alphabet id requires entries in {0, +z_v, -z_v}");
  std::uint64_t h = kFnvOffset;
  hash_u64(h, m.var_count());
  hash_u64(h, m.size());
  for (int code : *codes) hash_u64(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(code)));
  return hex_id(h);
}

std::string canonical_id(const SymbolicMatrix& m) { return alphabet_id(canonical_form(m)); }

bool linearly_independent(const std::vector<LinearForm>& forms) {
  if (forms.empty()) return true;
  std::size_t cols = forms[0].var_count();
  std::vector<std::vector<Rational>> rows;
  for (const auto& f : forms) {
    if (f.var_count() != cols) throw DimensionError("forms live in different variable counts");
    std::vector<Rational> r(cols);
    for (std::size_t v = 0; v < cols; ++v) r[v] = f.coeff(v);
    rows.push_back(std::move(r));
  }
  // Gaussian elimination; rank must equal the number of forms.
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      Rational factor = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < cols; ++c) rows[r][c] -= factor * rows[rank][c];
    }
    ++rank;
  }
  return rank == rows.size();
}

SymbolicMatrix build_m_prime(const SymbolicMatrix& m, const std::vector<LinearForm>& forms) {
  if (forms.size() != m.var_count())
    throw DimensionError("need one substitution form per variable");
  if (!linearly_independent(forms))
    throw ContractError("substitution forms must be linearly independent");
  std::size_t target = forms.empty() ? 0 : forms[0].var_count();
  SymbolicMatrix r(target, m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i; j < m.size(); ++j) {
      LinearForm f(target);
      for (std::size_t v = 0; v < m.var_count(); ++v) {
        const Rational& c = m.at(i, j).coeff(v);
        if (c != 0) f = f + forms[v] * c;
      }
      r.set(i, j, f);
    }
  return r;
}

}  // namespace goodpair
