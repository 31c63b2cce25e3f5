#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "goodpair/interval.hpp"
#include "goodpair/poly.hpp"
#include "goodpair/rational.hpp"

namespace goodpair {

enum class VerdictKind { PositiveDefinite, NegativeDefinite, Indefinite, IdenticallyZero, Unknown };

std::string verdict_kind_str(VerdictKind k);
VerdictKind verdict_kind_from_str(const std::string& s);

struct Budget {
  std::uint64_t max_boxes = 1'000'000;
  std::uint32_t max_depth = 24;
  std::uint32_t sample_count = 512;
};

struct Effort {
  std::uint64_t boxes = 0;
  std::uint32_t max_depth_reached = 0;
  std::uint64_t samples = 0;
};

// Exact evidence that a form is not definite: either the form vanishes at
// point (value == 0), or opposite_point carries a value of strictly opposite
// sign. The point is always nonzero.
struct IndefiniteWitness {
  std::vector<Rational> point;
  Rational value;
  std::optional<std::vector<Rational>> opposite_point;
  std::optional<Rational> opposite_value;
};

// Definiteness evidence for two-variable forms: the dehomogenization P(1, t)
// has reference_sign everywhere (no real roots) and the z2-axis value agrees.
struct SturmCertificate {
  int reference_sign = 0;
  std::vector<Rational> dehomogenized;  // coefficients of P(1, t), ascending
  Rational axis_coefficient;            // P(0, 1)
  int distinct_real_roots = 0;
};

// Subdivision tree over one face box. Leaves record the certified interval
// lower bound of reference_sign * P; splits record dimension and coordinate.
struct BoxTree {
  struct Node {
    int split_dim = -1;  // -1 marks a leaf
    Rational split_at;
    Rational lower_bound;
    std::int32_t lo_child = -1, hi_child = -1;
  };
  std::vector<Node> nodes;  // root at index 0
};

struct FaceCertificate {
  std::size_t face_var;  // coordinate fixed to +1; remaining ones range over [-1, 1]
  BoxTree tree;
};

struct BoxCoverCertificate {
  int reference_sign = 0;
  std::vector<FaceCertificate> faces;
};

// Fallback evidence for two-variable indefiniteness when the vanishing locus
// is irrational: the squarefree part of P(1, t) changes sign on [lo, hi].
struct RootIntervalEvidence {
  Rational lo, hi;
};

struct DefinitenessVerdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::optional<IndefiniteWitness> witness;
  std::optional<SturmCertificate> sturm;
  std::optional<BoxCoverCertificate> boxes;
  std::optional<RootIntervalEvidence> root_interval;
  Effort effort;
  std::string note;  // reason for Unknown or for a missing witness
};

constexpr std::uint64_t kDefaultRefuteSeed = 0x900dfa11ULL;

// Cheap exact sampling: axes, small axis combinations, then seeded random
// rational points. Returns a verified witness or nothing. Requires a
// homogeneous input.
std::optional<IndefiniteWitness> quick_refute(const Poly& form, const Budget& budget = {},
                                              std::uint64_t seed = kDefaultRefuteSeed);

// Complete decision for two-variable homogeneous forms via Sturm root
// counting on the dehomogenization. Never returns Unknown.
DefinitenessVerdict decide_two_vars(const Poly& form);

// Interval branch-and-bound over the faces of the unit cube. May return
// Unknown when the budget is exhausted. The box budget is split evenly
// across faces so runs are deterministic for any worker count.
DefinitenessVerdict certify_branch_bound(const Poly& form, const Budget& budget = {},
                                         unsigned workers = 1);

// Odd total degree forces indefiniteness (or the zero form); even degree
// yields nothing. The witness search scans a small deterministic grid.
std::optional<DefinitenessVerdict> parity_shortcut(const Poly& form);

// Dispatch: parity, quick refutation, then Sturm (two variables) or
// branch-and-bound. The only Unknown source is budget exhaustion.
DefinitenessVerdict decide(const Poly& form, const Budget& budget = {}, unsigned workers = 1);

bool verify_witness(const Poly& form, const IndefiniteWitness& w);

// Recomputes all evidence from scratch: witness values, Sturm data, interval
// bounds on every leaf box, and tree well-formedness.
bool verify_certificate(const Poly& form, const DefinitenessVerdict& verdict);

}  // namespace goodpair
