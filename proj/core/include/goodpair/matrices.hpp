#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "goodpair/poly.hpp"
#include "goodpair/rational.hpp"

namespace goodpair {

// Symmetric square matrix whose entries are rational linear forms in a fixed
// variable count. set() writes both (i, j) and (j, i), so symmetry is an
// invariant, not a convention.
class SymbolicMatrix {
 public:
  SymbolicMatrix() = default;
  SymbolicMatrix(std::size_t var_count, std::size_t size);

  std::size_t var_count() const { return vars_; }
  std::size_t size() const { return size_; }
  const LinearForm& at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const LinearForm& f);
  bool operator==(const SymbolicMatrix& o) const;
  bool operator!=(const SymbolicMatrix& o) const { return !(*this == o); }

  // Upper-triangle codes (row-major, diagonal included) for entries drawn
  // from {0, +z_v, -z_v}: 0 -> 0, +z_v -> v+1, -z_v -> -(v+1). Empty optional
  // when some entry has another shape.
  std::optional<std::vector<int>> alphabet_codes() const;
  static SymbolicMatrix from_alphabet_codes(std::size_t var_count, std::size_t size,
                                            const std::vector<int>& upper_codes);

  std::uint64_t content_hash() const;

 private:
  std::size_t vars_ = 0, size_ = 0;
  std::vector<LinearForm> entries_;  // row-major, kept symmetric
};

// Exact symbolic determinant. Laplace expansion with minor memoization up to
// size 8, fraction-free elimination beyond. The empty matrix has determinant 1.
Poly det_symbolic(const SymbolicMatrix& m);
// The two underlying algorithms, exposed so tests can cross-check them.
Poly det_cofactor_memo(const SymbolicMatrix& m);
Poly det_bareiss(const SymbolicMatrix& m);

// Block-diagonal composition; both blocks must share the variable count.
SymbolicMatrix block_compose(const SymbolicMatrix& a, const SymbolicMatrix& b);

// Merges variables: classes is a partition of the variable indices, and
// class k (ordered by smallest member) becomes variable k of the result.
SymbolicMatrix specialize_vars(const SymbolicMatrix& m,
                               const std::vector<std::vector<std::size_t>>& classes);

enum class ObstructionStatus { Passes, FailsParity, FailsDimension };

struct ObstructionReport {
  std::size_t l = 0, n = 0;
  ObstructionStatus status = ObstructionStatus::Passes;
  std::string detail;
};

// Structural feasibility of the pair (l, n): a determinant of odd degree in
// two or more variables is never definite, and below n = 2l a definite
// determinant of degree n - l in l variables cannot exist. Parity is
// reported first when both fail. Requires n > l.
ObstructionReport obstruction_check(std::size_t l, std::size_t n);

// Canonical representative of the orbit under simultaneous row/column
// permutation, diagonal sign conjugation, variable permutation, and variable
// sign flips. Entries must lie in the alphabet {0, +z_v, -z_v}.
SymbolicMatrix canonical_form(const SymbolicMatrix& m);
// Stable hex id of the canonical form; equal ids mean equal orbits.
std::string canonical_id(const SymbolicMatrix& m);
// Stable hex id of the matrix as given, without canonicalization; requires
// alphabet entries. canonical_id(m) == alphabet_id(canonical_form(m)).
std::string alphabet_id(const SymbolicMatrix& m);

// Substitutes forms[v] for variable v in every entry. The forms must be
// linearly independent and share a common variable count.
SymbolicMatrix build_m_prime(const SymbolicMatrix& m, const std::vector<LinearForm>& forms);
bool linearly_independent(const std::vector<LinearForm>& forms);

}  // namespace goodpair
