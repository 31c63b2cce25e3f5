#pragma once

// Internal nlohmann-based converters. The installed public surface stays
// string-based (goodpair/json_io.hpp); this header never ships.

#include <json.hpp>
#include <string>
#include <vector>

#include "goodpair/definiteness.hpp"
#include "goodpair/errors.hpp"
#include "goodpair/manifolds.hpp"
#include "goodpair/matrices.hpp"
#include "goodpair/poly.hpp"
#include "goodpair/rational.hpp"
#include "goodpair/search.hpp"

namespace goodpair::detail {

using nlohmann::json;

json rational_to_j(const Rational& r);
Rational rational_from_j(const json& j);

json point_to_j(const std::vector<Rational>& p);
std::vector<Rational> point_from_j(const json& j);

json poly_to_j(const Poly& p);
Poly poly_from_j(const json& j);

json matrix_to_j(const SymbolicMatrix& m);
SymbolicMatrix matrix_from_j(const json& j);

json witness_to_j(const IndefiniteWitness& w);
IndefiniteWitness witness_from_j(const json& j);

json verdict_to_j(const DefinitenessVerdict& v);
DefinitenessVerdict verdict_from_j(const json& j);

json budget_to_j(const Budget& b);
Budget budget_from_j(const json& j);

json search_config_to_j(const SearchConfig& c);
SearchConfig search_config_from_j(const json& j);

json counters_to_j(const SearchCounters& c);
SearchCounters counters_from_j(const json& j);

json candidate_to_j(const GoodPairCandidate& c);
GoodPairCandidate candidate_from_j(const json& j);

json manifold_to_j(const ManifoldSpec& spec);
ManifoldSpec manifold_from_j(const json& j);

json search_report_to_j(const SearchReport& r);

// Field access that reports the missing key instead of a bare exception.
const json& need(const json& j, const char* key);

// Parses text, mapping nlohmann's byte offsets to line/column ParseErrors.
json parse_text(const std::string& text);

}  // namespace goodpair::detail
