#pragma once

// Whole-document JSON conversion for the library's value types. Output is
// deterministic: object keys are sorted and rationals render canonically, so
// equal values always produce identical bytes. Parsers throw ParseError with
// a line and column for malformed text, and with a message naming the first
// offending field for well-formed text of the wrong shape.

#include <string>

#include "goodpair/definiteness.hpp"
#include "goodpair/manifolds.hpp"
#include "goodpair/matrices.hpp"
#include "goodpair/poly.hpp"
#include "goodpair/search.hpp"

namespace goodpair {

// indent < 0 emits compact single-line documents; otherwise pretty-printed
// with that many spaces per level.

std::string poly_to_json(const Poly& p, int indent = -1);
Poly poly_from_json(const std::string& text);

// Upper triangle is authoritative; a full matrix is accepted and checked
// for symmetry.
std::string matrix_to_json(const SymbolicMatrix& m, int indent = -1);
SymbolicMatrix matrix_from_json(const std::string& text);

// Verdicts round-trip with their witness and certificate payloads, so a
// stored verdict can be re-verified against its form later.
std::string verdict_to_json(const DefinitenessVerdict& v, int indent = -1);
DefinitenessVerdict verdict_from_json(const std::string& text);

std::string candidate_to_json(const GoodPairCandidate& c, int indent = -1);
GoodPairCandidate candidate_from_json(const std::string& text);

std::string manifold_to_json(const ManifoldSpec& spec, int indent = -1);
ManifoldSpec manifold_from_json(const std::string& text);

// Reports are write-only: they summarize a finished run.
std::string search_report_to_json(const SearchReport& r, int indent = -1);

}  // namespace goodpair
