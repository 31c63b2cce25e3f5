#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "goodpair/definiteness.hpp"
#include "goodpair/matrices.hpp"
#include "goodpair/poly.hpp"

namespace goodpair {

inline constexpr std::uint64_t kDefaultSearchSeed = 0x600d5eedULL;

enum class SearchMode { Exhaustive, Randomized };

std::string search_mode_str(SearchMode m);
SearchMode search_mode_from_str(const std::string& s);

struct SearchConfig {
  std::size_t l = 2, n = 4;
  SearchMode mode = SearchMode::Exhaustive;
  std::uint64_t seed = kDefaultSearchSeed;
  // 0: entries drawn from {0, +z_v, -z_v}. k >= 1: every integer combination
  // with coefficients in [-k, k] (dedupe then falls back to content identity,
  // since orbit canonicalization is defined only for the basic alphabet).
  int coeff_bound = 0;
  std::size_t numeric_points = 40;
  Budget decide_budget{20000, 20, 64};
  std::size_t random_samples = 100000;  // Randomized mode only
  // 0 = no cap; otherwise stop once at least this many candidates were
  // scanned (checked between blocks, so the effective stop is block-aligned).
  std::uint64_t max_candidates = 0;
  bool record_refutations = false;
  bool force = false;  // run even when obstruction_check does not pass
  std::size_t workers = 0;
};

struct SearchCounters {
  std::uint64_t scanned = 0;
  std::uint64_t refuted_missing_var = 0;  // some variable absent from every entry
  std::uint64_t refuted_numeric = 0;      // random-point sign inconsistency
  std::uint64_t refuted_structured = 0;   // axis/pair/triple point battery
  std::uint64_t rejected_indefinite = 0;  // decide found the determinant indefinite
  std::uint64_t zero_determinant = 0;     // determinant identically zero
  std::uint64_t unknown = 0;              // decide exhausted its budget
  std::uint64_t accepted = 0;             // definite determinant (before dedupe)

  std::uint64_t classified_total() const {
    return refuted_missing_var + refuted_numeric + refuted_structured + rejected_indefinite +
           zero_determinant + unknown + accepted;
  }
  bool operator==(const SearchCounters&) const = default;
};

struct GoodPairCandidate {
  std::size_t l = 0, n = 0;
  SymbolicMatrix matrix;  // canonical representative (basic alphabet mode)
  Poly det;               // det_symbolic(matrix), recomputed after canonicalization
  DefinitenessVerdict verdict;
  std::string canonical_id;
};

// A scanned matrix together with an exact witness against its determinant:
// either a nonzero point where the determinant vanishes, or a sign pair.
struct RefutationRecord {
  SymbolicMatrix matrix;
  IndefiniteWitness witness;
};

// One representative per determinant class whose verdict stayed Unknown.
struct UnknownRecord {
  SymbolicMatrix matrix;
  DefinitenessVerdict verdict;
  std::uint64_t class_count = 0;  // scanned candidates sharing the class
};

struct SearchReport {
  SearchConfig config;
  ObstructionReport obstruction;
  bool exhaustive = false;  // full exhaustive space closed
  bool truncated = false;   // stopped at max_candidates
  bool unknowns_capped = false;
  bool refutations_capped = false;
  SearchCounters counters;
  std::vector<GoodPairCandidate> accepted;  // deduped, deterministic order
  std::vector<UnknownRecord> unknowns;
  std::vector<RefutationRecord> refutations;  // populated when record_refutations
};

// Enumerates symmetric matrices over the entry alphabet and classifies each
// determinant: variable-coverage filter, numeric sign screens at exact
// integer points, then symbolic determinant and decide() on survivors.
// Throws ContractError when obstruction_check fails and force is not set.
// Results are independent of the worker count; equal configs (seed included)
// give equal reports.
SearchReport search(const SearchConfig& config);

// Same, but persists progress to checkpoint_path every checkpoint_every
// completed blocks and resumes from that file when it already exists.
// Resuming validates the stored config against the requested one
// (max_candidates and workers may differ) and refuses on mismatch.
SearchReport search(const SearchConfig& config, const std::string& checkpoint_path,
                    std::size_t checkpoint_every = 64);

// Upper-triangle entry count for matrices of the given size.
std::size_t search_entry_count(std::size_t l, std::size_t n);
// Number of enumeration blocks the space is split into (exhaustive mode).
std::size_t search_block_count(const SearchConfig& config);

}  // namespace goodpair
