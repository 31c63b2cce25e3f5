#include "json_detail.hpp"

#include <utility>

namespace goodpair::detail {

const json& need(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // e.byte is 1-based position past the offending character.
    std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    if (byte > text.size()) byte = text.size();
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("malformed JSON", line, col);
  }
}

json rational_to_j(const Rational& r) { return rational_str(r); }

Rational rational_from_j(const json& j) {
  if (!j.is_string()) throw ParseError("rational values are strings like \"-3/4\"");
  return parse_rational(j.get<std::string>());
}

json point_to_j(const std::vector<Rational>& p) {
  json a = json::array();
  for (const auto& c : p) a.push_back(rational_to_j(c));
  return a;
}

std::vector<Rational> point_from_j(const json& j) {
  if (!j.is_array()) throw ParseError("point must be an array of rationals");
  std::vector<Rational> p;
  for (const auto& c : j) p.push_back(rational_from_j(c));
  return p;
}

json poly_to_j(const Poly& p) {
  json terms = json::array();
  for (const auto& [mono, coeff] : p.terms()) {
    json t;
    t["exp"] = mono.exponents();
    t["num"] = coeff.get_num().get_str();
    t["den"] = coeff.get_den().get_str();
    terms.push_back(std::move(t));
  }
  json j;
  j["vars"] = p.var_count();
  j["terms"] = std::move(terms);
  return j;
}

Poly poly_from_j(const json& j) {
  std::size_t vars = need(j, "vars").get<std::size_t>();
  Poly p(vars);
  for (const auto& t : need(j, "terms")) {
    auto exps = need(t, "exp").get<std::vector<std::uint32_t>>();
    if (exps.size() != vars) throw ParseError("term exponent length disagrees with vars");
    const json& num = need(t, "num");
    const json& den = need(t, "den");
    if (!num.is_string() || !den.is_string())
      throw ParseError("coefficients are decimal strings under \"num\" and \"den\"");
    Integer n_i, d_i;
    try {
      n_i = Integer(num.get<std::string>());
      d_i = Integer(den.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw ParseError("coefficient is not a decimal integer string");
    }
    if (d_i == 0) throw ParseError("coefficient denominator is zero");
    p.add_term(Monomial(std::move(exps)), Rational(n_i) / Rational(d_i));
  }
  return p;
}

json matrix_to_j(const SymbolicMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j2 = 0; j2 < m.size(); ++j2) row.push_back(m.at(i, j2).to_text());
    rows.push_back(std::move(row));
  }
  json j;
  j["l"] = m.var_count();
  j["n"] = m.var_count() + m.size();
  j["entries"] = std::move(rows);
  return j;
}

SymbolicMatrix matrix_from_j(const json& j) {
  std::size_t l = need(j, "l").get<std::size_t>();
  std::size_t n = need(j, "n").get<std::size_t>();
  if (l == 0 || n <= l) throw ParseError("matrix requires n > l >= 1");
  std::size_t size = n - l;
  const json& rows = need(j, "entries");
  if (!rows.is_array() || rows.size() != size)
    throw ParseError("entries must hold n - l rows");
  SymbolicMatrix m(l, size);
  // Row i carries either a full row or just the tail from the diagonal on;
  // the upper triangle is authoritative either way.
  for (std::size_t i = 0; i < size; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || (row.size() != size && row.size() != size - i))
      throw ParseError("row " + std::to_string(i + 1) + " must hold " + std::to_string(size) +
                       " entries or the " + std::to_string(size - i) + " from the diagonal on");
    const std::size_t skip = size - row.size();
    for (std::size_t k = i; k < size; ++k)
      m.set(i, k, parse_linear_form(row[k - skip].get<std::string>(), l));
  }
  for (std::size_t i = 1; i < size; ++i) {
    const json& row = rows[i];
    if (row.size() != size) continue;
    for (std::size_t k = 0; k < i; ++k) {
      LinearForm given = parse_linear_form(row[k].get<std::string>(), l);
      if (given != m.at(i, k))
        throw ParseError("matrix is not symmetric at entry (" + std::to_string(i + 1) + ", " +
                         std::to_string(k + 1) + ")");
    }
  }
  return m;
}

json witness_to_j(const IndefiniteWitness& w) {
  json j;
  j["point"] = point_to_j(w.point);
  j["value"] = rational_to_j(w.value);
  if (w.opposite_point) {
    j["opposite_point"] = point_to_j(*w.opposite_point);
    j["opposite_value"] = rational_to_j(*w.opposite_value);
  }
  return j;
}

IndefiniteWitness witness_from_j(const json& j) {
  IndefiniteWitness w;
  w.point = point_from_j(need(j, "point"));
  w.value = rational_from_j(need(j, "value"));
  if (j.contains("opposite_point")) {
    w.opposite_point = point_from_j(j["opposite_point"]);
    w.opposite_value = rational_from_j(need(j, "opposite_value"));
  }
  return w;
}

namespace {

json sturm_to_j(const SturmCertificate& s) {
  json j;
  j["reference_sign"] = s.reference_sign;
  j["dehomogenized"] = point_to_j(s.dehomogenized);
  j["axis_coefficient"] = rational_to_j(s.axis_coefficient);
  j["distinct_real_roots"] = s.distinct_real_roots;
  return j;
}

SturmCertificate sturm_from_j(const json& j) {
  SturmCertificate s;
  s.reference_sign = need(j, "reference_sign").get<int>();
  s.dehomogenized = point_from_j(need(j, "dehomogenized"));
  s.axis_coefficient = rational_from_j(need(j, "axis_coefficient"));
  s.distinct_real_roots = need(j, "distinct_real_roots").get<int>();
  return s;
}

json boxes_to_j(const BoxCoverCertificate& b) {
  json faces = json::array();
  for (const auto& f : b.faces) {
    json nodes = json::array();
    for (const auto& nd : f.tree.nodes) {
      json n;
      n["split_dim"] = nd.split_dim;
      n["split_at"] = rational_to_j(nd.split_at);
      n["lower_bound"] = rational_to_j(nd.lower_bound);
      n["lo"] = nd.lo_child;
      n["hi"] = nd.hi_child;
      nodes.push_back(std::move(n));
    }
    json fj;
    fj["face_var"] = f.face_var;
    fj["tree"] = std::move(nodes);
    faces.push_back(std::move(fj));
  }
  json j;
  j["reference_sign"] = b.reference_sign;
  j["faces"] = std::move(faces);
  return j;
}

BoxCoverCertificate boxes_from_j(const json& j) {
  BoxCoverCertificate b;
  b.reference_sign = need(j, "reference_sign").get<int>();
  for (const auto& fj : need(j, "faces")) {
    FaceCertificate f;
    f.face_var = need(fj, "face_var").get<std::size_t>();
    for (const auto& n : need(fj, "tree")) {
      BoxTree::Node nd;
      nd.split_dim = need(n, "split_dim").get<int>();
      nd.split_at = rational_from_j(need(n, "split_at"));
      nd.lower_bound = rational_from_j(need(n, "lower_bound"));
      nd.lo_child = need(n, "lo").get<std::int32_t>();
      nd.hi_child = need(n, "hi").get<std::int32_t>();
      f.tree.nodes.push_back(std::move(nd));
    }
    b.faces.push_back(std::move(f));
  }
  return b;
}

}  // namespace

json verdict_to_j(const DefinitenessVerdict& v) {
  json j;
  j["kind"] = verdict_kind_str(v.kind);
  if (v.witness) j["witness"] = witness_to_j(*v.witness);
  if (v.sturm) j["sturm"] = sturm_to_j(*v.sturm);
  if (v.boxes) j["boxes"] = boxes_to_j(*v.boxes);
  if (v.root_interval) {
    json ri;
    ri["lo"] = rational_to_j(v.root_interval->lo);
    ri["hi"] = rational_to_j(v.root_interval->hi);
    j["root_interval"] = std::move(ri);
  }
  json e;
  e["boxes"] = v.effort.boxes;
  e["max_depth"] = v.effort.max_depth_reached;
  e["samples"] = v.effort.samples;
  j["effort"] = std::move(e);
  if (!v.note.empty()) j["note"] = v.note;
  return j;
}

DefinitenessVerdict verdict_from_j(const json& j) {
  DefinitenessVerdict v;
  v.kind = verdict_kind_from_str(need(j, "kind").get<std::string>());
  if (j.contains("witness")) v.witness = witness_from_j(j["witness"]);
  if (j.contains("sturm")) v.sturm = sturm_from_j(j["sturm"]);
  if (j.contains("boxes")) v.boxes = boxes_from_j(j["boxes"]);
  if (j.contains("root_interval")) {
    RootIntervalEvidence ri;
    ri.lo = rational_from_j(need(j["root_interval"], "lo"));
    ri.hi = rational_from_j(need(j["root_interval"], "hi"));
    v.root_interval = std::move(ri);
  }
  if (j.contains("effort")) {
    v.effort.boxes = need(j["effort"], "boxes").get<std::uint64_t>();
    v.effort.max_depth_reached = need(j["effort"], "max_depth").get<std::uint32_t>();
    v.effort.samples = need(j["effort"], "samples").get<std::uint64_t>();
  }
  if (j.contains("note")) v.note = j["note"].get<std::string>();
  return v;
}

json budget_to_j(const Budget& b) {
  json j;
  j["max_boxes"] = b.max_boxes;
  j["max_depth"] = b.max_depth;
  j["sample_count"] = b.sample_count;
  return j;
}

Budget budget_from_j(const json& j) {
  Budget b;
  b.max_boxes = need(j, "max_boxes").get<std::uint64_t>();
  b.max_depth = need(j, "max_depth").get<std::uint32_t>();
  b.sample_count = need(j, "sample_count").get<std::uint32_t>();
  return b;
}

json search_config_to_j(const SearchConfig& c) {
  json j;
  j["l"] = c.l;
  j["n"] = c.n;
  j["mode"] = search_mode_str(c.mode);
  j["seed"] = c.seed;
  j["coeff_bound"] = c.coeff_bound;
  j["numeric_points"] = c.numeric_points;
  j["decide_budget"] = budget_to_j(c.decide_budget);
  j["random_samples"] = c.random_samples;
  j["max_candidates"] = c.max_candidates;
  j["record_refutations"] = c.record_refutations;
  j["force"] = c.force;
  return j;
}

SearchConfig search_config_from_j(const json& j) {
  SearchConfig c;
  c.l = need(j, "l").get<std::size_t>();
  c.n = need(j, "n").get<std::size_t>();
  c.mode = search_mode_from_str(need(j, "mode").get<std::string>());
  c.seed = need(j, "seed").get<std::uint64_t>();
  c.coeff_bound = need(j, "coeff_bound").get<int>();
  c.numeric_points = need(j, "numeric_points").get<std::size_t>();
  c.decide_budget = budget_from_j(need(j, "decide_budget"));
  c.random_samples = need(j, "random_samples").get<std::size_t>();
  c.max_candidates = need(j, "max_candidates").get<std::uint64_t>();
  c.record_refutations = need(j, "record_refutations").get<bool>();
  c.force = need(j, "force").get<bool>();
  return c;
}

json counters_to_j(const SearchCounters& c) {
  json j;
  j["scanned"] = c.scanned;
  j["refuted_missing_var"] = c.refuted_missing_var;
  j["refuted_numeric"] = c.refuted_numeric;
  j["refuted_structured"] = c.refuted_structured;
  j["rejected_indefinite"] = c.rejected_indefinite;
  j["zero_determinant"] = c.zero_determinant;
  j["unknown"] = c.unknown;
  j["accepted"] = c.accepted;
  return j;
}

SearchCounters counters_from_j(const json& j) {
  SearchCounters c;
  c.scanned = need(j, "scanned").get<std::uint64_t>();
  c.refuted_missing_var = need(j, "refuted_missing_var").get<std::uint64_t>();
  c.refuted_numeric = need(j, "refuted_numeric").get<std::uint64_t>();
  c.refuted_structured = need(j, "refuted_structured").get<std::uint64_t>();
  c.rejected_indefinite = need(j, "rejected_indefinite").get<std::uint64_t>();
  c.zero_determinant = need(j, "zero_determinant").get<std::uint64_t>();
  c.unknown = need(j, "unknown").get<std::uint64_t>();
  c.accepted = need(j, "accepted").get<std::uint64_t>();
  return c;
}

json candidate_to_j(const GoodPairCandidate& c) {
  json j;
  j["l"] = c.l;
  j["n"] = c.n;
  j["matrix"] = matrix_to_j(c.matrix);
  j["det"] = poly_to_j(c.det);
  j["det_text"] = c.det.to_text();
  j["verdict"] = verdict_to_j(c.verdict);
  j["canonical_id"] = c.canonical_id;
  return j;
}

GoodPairCandidate candidate_from_j(const json& j) {
  GoodPairCandidate c;
  c.l = need(j, "l").get<std::size_t>();
  c.n = need(j, "n").get<std::size_t>();
  c.matrix = matrix_from_j(need(j, "matrix"));
  c.det = poly_from_j(need(j, "det"));
  c.verdict = verdict_from_j(need(j, "verdict"));
  c.canonical_id = need(j, "canonical_id").get<std::string>();
  return c;
}

json manifold_to_j(const ManifoldSpec& spec) {
  json hessians = json::array();
  for (const auto& h : spec.system.forms) {
    json m = json::array();
    for (const auto& row : h) m.push_back(point_to_j(row));
    hessians.push_back(std::move(m));
  }
  json j;
  j["n"] = spec.n;
  j["l"] = spec.l;
  j["hessians"] = std::move(hessians);
  j["label"] = spec.label;
  return j;
}

ManifoldSpec manifold_from_j(const json& j) {
  ManifoldSpec spec;
  spec.n = need(j, "n").get<std::size_t>();
  spec.l = need(j, "l").get<std::size_t>();
  if (spec.l == 0 || spec.n <= spec.l) throw ParseError("manifold requires n > l >= 1");
  const std::size_t dim = spec.n - spec.l;
  const json& hessians = need(j, "hessians");
  if (!hessians.is_array() || hessians.size() != spec.l)
    throw ParseError("hessians must hold l matrices");
  spec.system.l = spec.l;
  spec.system.dim = dim;
  for (const auto& hj : hessians) {
    if (!hj.is_array() || hj.size() != dim)
      throw ParseError("each hessian must be (n - l) x (n - l)");
    std::vector<std::vector<Rational>> h;
    for (const auto& row : hj) {
      if (!row.is_array() || row.size() != dim)
        throw ParseError("each hessian must be (n - l) x (n - l)");
      h.push_back(point_from_j(row));
    }
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t k = i + 1; k < dim; ++k) {
        if (h[i][k] != h[k][i])
          throw ParseError("hessian is not symmetric at entry (" + std::to_string(i + 1) +
                           ", " + std::to_string(k + 1) + ")");
      }
    }
    spec.system.forms.push_back(std::move(h));
  }
  if (auto it = j.find("label"); it != j.end()) {
    if (!it->is_string()) throw ParseError("label must be a string");
    spec.label = it->get<std::string>();
  }
  return spec;
}

json search_report_to_j(const SearchReport& r) {
  json j;
  j["config"] = search_config_to_j(r.config);
  json ob;
  ob["l"] = r.obstruction.l;
  ob["n"] = r.obstruction.n;
  ob["status"] = r.obstruction.status == ObstructionStatus::Passes        ? "passes"
                 : r.obstruction.status == ObstructionStatus::FailsParity ? "fails_parity"
                                                                          : "fails_dimension";
  ob["detail"] = r.obstruction.detail;
  j["obstruction"] = std::move(ob);
  j["exhaustive"] = r.exhaustive;
  j["truncated"] = r.truncated;
  j["unknowns_capped"] = r.unknowns_capped;
  j["refutations_capped"] = r.refutations_capped;
  j["counters"] = counters_to_j(r.counters);
  json acc = json::array();
  for (const auto& c : r.accepted) acc.push_back(candidate_to_j(c));
  j["accepted"] = std::move(acc);
  json unk = json::array();
  for (const auto& u : r.unknowns) {
    json uj;
    uj["matrix"] = matrix_to_j(u.matrix);
    uj["verdict"] = verdict_to_j(u.verdict);
    uj["class_count"] = u.class_count;
    unk.push_back(std::move(uj));
  }
  j["unknowns"] = std::move(unk);
  json refs = json::array();
  for (const auto& rec : r.refutations) {
    json rj;
    rj["matrix"] = matrix_to_j(rec.matrix);
    rj["witness"] = witness_to_j(rec.witness);
    refs.push_back(std::move(rj));
  }
  j["refutations"] = std::move(refs);
  return j;
}

}  // namespace goodpair::detail
