#include "goodpair/json_io.hpp"

#include "json_detail.hpp"

namespace goodpair {

namespace {

std::string dump(const detail::json& j, int indent) { return j.dump(indent); }

}  // namespace

std::string poly_to_json(const Poly& p, int indent) {
  return dump(detail::poly_to_j(p), indent);
}

Poly poly_from_json(const std::string& text) {
  return detail::poly_from_j(detail::parse_text(text));
}

std::string matrix_to_json(const SymbolicMatrix& m, int indent) {
  return dump(detail::matrix_to_j(m), indent);
}

SymbolicMatrix matrix_from_json(const std::string& text) {
  return detail::matrix_from_j(detail::parse_text(text));
}

std::string verdict_to_json(const DefinitenessVerdict& v, int indent) {
  return dump(detail::verdict_to_j(v), indent);
}

DefinitenessVerdict verdict_from_json(const std::string& text) {
  return detail::verdict_from_j(detail::parse_text(text));
}

std::string candidate_to_json(const GoodPairCandidate& c, int indent) {
  return dump(detail::candidate_to_j(c), indent);
}

GoodPairCandidate candidate_from_json(const std::string& text) {
  return detail::candidate_from_j(detail::parse_text(text));
}

std::string manifold_to_json(const ManifoldSpec& spec, int indent) {
  return dump(detail::manifold_to_j(spec), indent);
}

ManifoldSpec manifold_from_json(const std::string& text) {
  return detail::manifold_from_j(detail::parse_text(text));
}

std::string search_report_to_json(const SearchReport& r, int indent) {
  return dump(detail::search_report_to_j(r), indent);
}

}  // namespace goodpair
