// Command-line driver. Machine-readable JSON goes to stdout, human summaries
// to stderr, so pipelines can parse the primary output. Exit codes: 0 when
// the requested property holds (or plain success), 1 for a verified negative,
// 2 when a budget ran out before a verdict, 3 for usage errors and refusals,
// 4 for file and parse trouble.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "goodpair/definiteness.hpp"
#include "goodpair/errors.hpp"
#include "goodpair/gbsp.hpp"
#include "goodpair/manifolds.hpp"
#include "goodpair/matrices.hpp"
#include "goodpair/poly.hpp"
#include "goodpair/search.hpp"
#include "json_detail.hpp"

namespace {

using namespace goodpair;
using detail::json;

constexpr int kOk = 0;        // success / definite
constexpr int kNegative = 1;  // verified negative
constexpr int kUnknown = 2;   // budget exhausted, no verdict
constexpr int kUsage = 3;     // bad invocation or refusal
constexpr int kIo = 4;        // file or parse trouble

struct UsageError : Error {
  explicit UsageError(const std::string& what) : Error(what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(what) {}
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw IoError("cannot write " + path);
}

SymbolicMatrix matrix_from_json_text(const std::string& text) {
  return detail::matrix_from_j(detail::parse_text(text));
}

Rational rat_arg(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const ParseError& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

std::vector<Rational> rat_list_arg(const std::string& text, const char* flag) {
  std::vector<Rational> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(rat_arg(item, flag));
  if (out.empty()) throw UsageError(std::string(flag) + ": empty list");
  return out;
}

unsigned resolve_workers(unsigned flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("GOODPAIR_WORKERS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && v > 0 && v <= 4096) return static_cast<unsigned>(v);
    throw UsageError("GOODPAIR_WORKERS must be a positive integer, got \"" + std::string(env) +
                     "\"");
  }
  return 1;
}

struct BudgetFlags {
  std::uint64_t boxes = 0;
  std::uint32_t depth = 0;
  std::uint32_t samples = 0;

  Budget apply(Budget base) const {
    if (boxes > 0) base.max_boxes = boxes;
    if (depth > 0) base.max_depth = depth;
    if (samples > 0) base.sample_count = samples;
    return base;
  }
};

void add_budget_flags(CLI::App* cmd, BudgetFlags& f) {
  cmd->add_option("--max-boxes", f.boxes, "subdivision box budget for definiteness checks");
  cmd->add_option("--max-depth", f.depth, "subdivision depth limit");
  cmd->add_option("--samples", f.samples, "sample count for the numeric pre-screen");
}

json obstruction_to_j(const ObstructionReport& ob) {
  json j;
  j["l"] = ob.l;
  j["n"] = ob.n;
  j["status"] = ob.status == ObstructionStatus::Passes        ? "passes"
                : ob.status == ObstructionStatus::FailsParity ? "fails_parity"
                                                              : "fails_dimension";
  j["detail"] = ob.detail;
  return j;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int verdict_exit(VerdictKind k) {
  switch (k) {
    case VerdictKind::PositiveDefinite:
    case VerdictKind::NegativeDefinite:
      return kOk;
    case VerdictKind::Indefinite:
    case VerdictKind::IdenticallyZero:
      return kNegative;
    case VerdictKind::Unknown:
      return kUnknown;
  }
  return kUnknown;
}

// --- verify -----------------------------------------------------------

int cmd_verify(const std::string& matrix_path, const BudgetFlags& budget, unsigned workers,
               const std::string& certificate_path) {
  const SymbolicMatrix m = matrix_from_json_text(read_file(matrix_path));
  const std::size_t l = m.var_count();
  const std::size_t n = l + m.size();
  const Poly det = det_symbolic(m);
  const ObstructionReport ob = obstruction_check(l, n);
  const DefinitenessVerdict v = decide(det, budget.apply(Budget{}), workers);

  json out;
  out["l"] = l;
  out["n"] = n;
  out["det"] = detail::poly_to_j(det);
  out["det_text"] = det.to_text();
  out["degree"] = det.degree();
  out["homogeneous"] = det.homogeneity_degree().has_value();
  out["obstruction"] = obstruction_to_j(ob);
  out["verdict"] = detail::verdict_to_j(v);
  if (!certificate_path.empty()) {
    write_file(certificate_path, detail::verdict_to_j(v).dump(2) + "\n");
    out["certificate_path"] = certificate_path;
  }
  emit(out);

  std::cerr << "pair        (" << l << ", " << n << ")\n"
            << "det         " << det.to_text() << "\n"
            << "degree      " << det.degree()
            << (det.homogeneity_degree() ? " (homogeneous)" : " (not homogeneous)") << "\n"
            << "obstruction " << (ob.status == ObstructionStatus::Passes ? "passes" : ob.detail)
            << "\n"
            << "verdict     " << verdict_kind_str(v.kind) << "\n";
  if (!certificate_path.empty()) std::cerr << "certificate " << certificate_path << "\n";
  return verdict_exit(v.kind);
}

// --- search -----------------------------------------------------------

int cmd_search(SearchConfig cfg, const std::string& checkpoint, const std::string& out_path) {
  const ObstructionReport ob = obstruction_check(cfg.l, cfg.n);
  if (ob.status != ObstructionStatus::Passes && !cfg.force) {
    std::cerr << "refusing (" << cfg.l << ", " << cfg.n << "): " << ob.detail
              << "; pass --force to search anyway\n";
    return kUsage;
  }

  const SearchReport report =
      checkpoint.empty() ? search(cfg) : search(cfg, checkpoint);

  const std::string text = detail::search_report_to_j(report).dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) write_file(out_path, text);

  const SearchCounters& c = report.counters;
  std::cerr << "scanned            " << c.scanned << "\n"
            << "  missing variable " << c.refuted_missing_var << "\n"
            << "  numeric screen   " << c.refuted_numeric << "\n"
            << "  structured zeros " << c.refuted_structured << "\n"
            << "  indefinite       " << c.rejected_indefinite << "\n"
            << "  zero determinant " << c.zero_determinant << "\n"
            << "  unknown          " << c.unknown << "\n"
            << "accepted classes   " << report.accepted.size() << "\n"
            << "exhaustive         " << (report.exhaustive ? "yes" : "no") << "\n";
  if (report.truncated) std::cerr << "stopped at the candidate cap\n";

  if (!report.accepted.empty()) return kOk;
  return report.exhaustive ? kNegative : kUnknown;
}

// --- construct ---------------------------------------------------------

int cmd_construct(const std::string& matrix_path, const std::string& out_path,
                  std::string label) {
  const SymbolicMatrix m = matrix_from_json_text(read_file(matrix_path));
  ManifoldSpec spec;
  spec.l = m.var_count();
  spec.n = m.var_count() + m.size();
  spec.system = build_quadratic_system(m);
  if (label.empty()) label = "M_" + std::to_string(spec.l) + "_" + std::to_string(spec.n);
  spec.label = std::move(label);

  const std::string text = detail::manifold_to_j(spec).dump(2) + "\n";
  std::cout << text;
  if (!out_path.empty()) write_file(out_path, text);
  std::cerr << "manifold " << spec.label << ": (l, n) = (" << spec.l << ", " << spec.n
            << "), graph dimension " << spec.system.dim << "\n";
  return kOk;
}

// --- check2 ------------------------------------------------------------

int cmd_check2(const std::string& manifold_path, const BudgetFlags& budget, unsigned workers) {
  const ManifoldSpec spec = detail::manifold_from_j(detail::parse_text(read_file(manifold_path)));
  const Poly det = det_symbolic(lambda_matrix(spec.system));
  const DefinitenessVerdict v = check_condition_II(spec.system, budget.apply(Budget{}), workers);

  json out;
  out["label"] = spec.label;
  out["l"] = spec.l;
  out["n"] = spec.n;
  out["det_text"] = det.to_text("s");
  out["verdict"] = detail::verdict_to_j(v);
  emit(out);

  std::cerr << "manifold " << spec.label << "\n"
            << "det      " << det.to_text("s") << "\n"
            << "verdict  " << verdict_kind_str(v.kind) << "\n";
  return verdict_exit(v.kind);
}

// --- analyze -----------------------------------------------------------

int cmd_analyze(std::size_t n, std::size_t l, const std::string& tau_text,
                const std::string& s_text, std::size_t shells) {
  PowerLawData d;
  d.n = n;
  d.l = l;
  d.tau = rat_arg(tau_text, "--tau");
  d.s = rat_arg(s_text, "--s");

  const SeriesClass cls = classify_series(d);
  const Rational s_star = critical_exponent(n, l, d.tau);

  json out;
  out["n"] = n;
  out["l"] = l;
  out["tau"] = rational_str(d.tau);
  out["s"] = rational_str(d.s);
  out["classification"] = series_class_str(cls);
  out["s_star"] = rational_str(s_star);
  out["shell_exponent"] = rational_str(shell_exponent(d));
  out["shells"] = json::array();
  try {
    Rational sum(0);
    for (std::uint64_t q = 1; q <= shells; ++q) {
      const Rational term = shell_term(d, q);
      sum += term;
      json shell;
      shell["q"] = q;
      shell["vectors"] = shell_count(n, q).get_str();
      shell["term"] = rational_str(term);
      shell["partial_sum"] = rational_str(sum);
      out["shells"].push_back(std::move(shell));
    }
  } catch (const ContractError& e) {
    out["shells"] = json::array();
    out["shells_note"] = e.what();
  }
  emit(out);

  std::cerr << "classification " << series_class_str(cls) << "\n"
            << "s*             " << rational_str(s_star) << "\n"
            << "shell exponent " << rational_str(shell_exponent(d)) << "\n";
  return kOk;
}

// --- cover -------------------------------------------------------------

std::pair<unsigned, unsigned> parse_ladder(const std::string& text) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const unsigned k = static_cast<unsigned>(std::stoul(text));
      return {k, k};
    }
    return {static_cast<unsigned>(std::stoul(text.substr(0, colon))),
            static_cast<unsigned>(std::stoul(text.substr(colon + 1)))};
  } catch (const std::exception&) {
    throw UsageError("--delta-ladder expects k or k_min:k_max, got \"" + text + "\"");
  }
}

int cmd_cover(const std::string& manifold_path, const std::string& alpha_text,
              const std::string& ladder_text, const std::string& weights_text,
              const std::string& linear_text, const std::string& offset_text,
              const std::string& center_text, const std::string& factor_text, bool strict) {
  const ManifoldSpec spec = detail::manifold_from_j(detail::parse_text(read_file(manifold_path)));
  const std::size_t dim = spec.system.dim;

  std::vector<Rational> weights(spec.l, Rational(0));
  weights[0] = 1;
  if (!weights_text.empty()) weights = rat_list_arg(weights_text, "--weights");
  std::vector<Rational> linear(dim, Rational(0));
  linear[0] = 1;
  if (!linear_text.empty()) linear = rat_list_arg(linear_text, "--linear");
  std::vector<Rational> center(dim, Rational(0));
  if (!center_text.empty()) center = rat_list_arg(center_text, "--center");

  CoverProbe probe;
  probe.phi = probe_function(spec.system, weights, linear, rat_arg(offset_text, "--offset"));
  probe.center = std::move(center);
  probe.alpha = rat_arg(alpha_text, "--alpha");
  probe.c = rat_arg(factor_text, "--factor");
  probe.strict = strict;

  const auto [k_min, k_max] = parse_ladder(ladder_text);
  const CoverSlope slope = covering_slope(probe, k_min, k_max);

  json out;
  out["label"] = spec.label;
  out["alpha"] = rational_str(probe.alpha);
  out["dimension"] = dim;
  out["slope"] = slope.slope;
  out["rungs"] = json::array();
  for (std::size_t i = 0; i < slope.rungs.size(); ++i) {
    json rung;
    rung["k"] = k_min + i;
    rung["delta"] = rational_str(slope.deltas[i]);
    rung["cells"] = slope.rungs[i].cells;
    rung["cells_per_axis"] = slope.rungs[i].cells_per_axis;
    rung["precondition_ok"] = slope.rungs[i].precondition_ok;
    out["rungs"].push_back(std::move(rung));
  }
  emit(out);

  std::cerr << "manifold " << spec.label << ", dimension " << dim << "\n";
  for (std::size_t i = 0; i < slope.rungs.size(); ++i)
    std::cerr << "  delta = " << std::setw(12) << rational_str(slope.deltas[i]) << "  cells = "
              << slope.rungs[i].cells << "\n";
  std::cerr << "slope " << slope.slope << "\n";
  return kOk;
}

// --- catalog -----------------------------------------------------------

int cmd_catalog(const BudgetFlags& budget, unsigned workers) {
  json out = json::array();
  std::ostringstream table;
  table << std::left << std::setw(14) << "label" << std::setw(10) << "(l, n)" << std::setw(22)
        << "condition (I)" << "condition (II)\n";

  for (const ManifoldSpec& spec : example_catalog()) {
    const PowerRange range = all_power_range(spec.n, spec.l);
    const std::string cond1 =
        range.empty() ? "(I) fails: dim " + std::to_string(spec.system.dim)
                      : "[" + rational_str(range.lo) + ", " + rational_str(range.hi) + ")";
    const DefinitenessVerdict v =
        check_condition_II(spec.system, budget.apply(Budget{}), workers);

    json entry;
    entry["label"] = spec.label;
    entry["l"] = spec.l;
    entry["n"] = spec.n;
    entry["dimension"] = spec.system.dim;
    entry["condition_I"] = cond1;
    if (!range.empty()) {
      entry["condition_I_range"] = {{"lo", rational_str(range.lo)},
                                    {"hi", rational_str(range.hi)}};
    }
    entry["condition_II"] = verdict_kind_str(v.kind);
    out.push_back(std::move(entry));

    table << std::left << std::setw(14) << spec.label << std::setw(10)
          << ("(" + std::to_string(spec.l) + ", " + std::to_string(spec.n) + ")")
          << std::setw(22) << cond1 << verdict_kind_str(v.kind) << "\n";
  }
  emit(out);
  std::cerr << table.str();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"good-pair toolkit: determinant analysis, search, manifolds, series, coverings"};
  app.require_subcommand(1);

  // verify
  std::string verify_matrix, verify_certificate;
  BudgetFlags verify_budget;
  unsigned verify_workers = 0;
  CLI::App* verify = app.add_subcommand(
      "verify", "determinant, obstructions, and definiteness of a matrix file");
  verify->add_option("matrix", verify_matrix, "matrix JSON file")->required();
  verify->add_option("--certificate", verify_certificate, "write the verdict JSON here too");
  verify->add_option("--workers", verify_workers, "worker threads (default GOODPAIR_WORKERS or 1)");
  add_budget_flags(verify, verify_budget);

  // search
  SearchConfig search_cfg;
  std::string search_mode = "exhaustive", search_checkpoint, search_out;
  BudgetFlags search_budget;
  unsigned search_workers = 0;
  CLI::App* search_cmd =
      app.add_subcommand("search", "enumerate candidate matrices for a pair (l, n)");
  search_cmd->add_option("--l", search_cfg.l, "number of variables")->required();
  search_cmd->add_option("--n", search_cfg.n, "ambient dimension")->required();
  search_cmd->add_option("--mode", search_mode, "exhaustive or randomized");
  search_cmd->add_option("--seed", search_cfg.seed, "PRNG seed (fixes the output bytes)");
  search_cmd->add_option("--coeff-bound", search_cfg.coeff_bound,
                         "entry alphabet: 0 keeps {0, +z, -z}; k >= 1 allows integer "
                         "combinations with coefficients up to k");
  search_cmd->add_option("--numeric-points", search_cfg.numeric_points,
                         "random evaluation points in the pre-screen");
  search_cmd->add_option("--random-samples", search_cfg.random_samples,
                         "matrices to draw in randomized mode");
  search_cmd->add_option("--max-candidates", search_cfg.max_candidates,
                         "stop after roughly this many scanned matrices (0 = no cap)");
  search_cmd->add_flag("--record-refutations", search_cfg.record_refutations,
                       "keep a witness for every refuted candidate");
  search_cmd->add_flag("--force", search_cfg.force, "search even when the pair is obstructed");
  search_cmd->add_option("--checkpoint", search_checkpoint, "persist progress here and resume");
  search_cmd->add_option("--out", search_out, "also write the report JSON to this file");
  search_cmd->add_option("--workers", search_workers,
                         "worker threads (default GOODPAIR_WORKERS or 1)");
  add_budget_flags(search_cmd, search_budget);

  // construct
  std::string construct_matrix, construct_out, construct_label;
  CLI::App* construct =
      app.add_subcommand("construct", "build the quadratic-form manifold of a matrix");
  construct->add_option("--matrix", construct_matrix, "matrix JSON file")->required();
  construct->add_option("--out", construct_out, "write the manifold JSON here too");
  construct->add_option("--label", construct_label, "manifold label (default M_l_n)");

  // check2
  std::string check2_manifold;
  BudgetFlags check2_budget;
  unsigned check2_workers = 0;
  CLI::App* check2 =
      app.add_subcommand("check2", "definiteness of the weight-matrix determinant of a manifold");
  check2->add_option("--manifold", check2_manifold, "manifold JSON file")->required();
  check2->add_option("--workers", check2_workers, "worker threads (default GOODPAIR_WORKERS or 1)");
  add_budget_flags(check2, check2_budget);

  // analyze
  std::size_t analyze_n = 0, analyze_l = 0, analyze_shells = 8;
  std::string analyze_tau, analyze_s;
  CLI::App* analyze =
      app.add_subcommand("analyze", "critical exponent and volume series of a power law");
  analyze->add_option("--n", analyze_n, "ambient dimension")->required();
  analyze->add_option("--l", analyze_l, "codimension")->required();
  analyze->add_option("--tau", analyze_tau, "approximation exponent (rational)")->required();
  analyze->add_option("--s", analyze_s, "dimension parameter (rational)")->required();
  analyze->add_option("--shells", analyze_shells, "number of shells to tabulate (default 8)");

  // cover
  std::string cover_manifold, cover_alpha, cover_ladder = "3:9";
  std::string cover_weights, cover_linear, cover_center;
  std::string cover_offset = "0", cover_factor = "4";
  bool cover_strict = false;
  CLI::App* cover =
      app.add_subcommand("cover", "slab covering counts along a dyadic delta ladder");
  cover->add_option("--manifold", cover_manifold, "manifold JSON file")->required();
  cover->add_option("--alpha", cover_alpha, "ball radius (rational)")->required();
  cover->add_option("--delta-ladder", cover_ladder,
                    "dyadic ladder k_min:k_max, delta = alpha / 2^k (default 3:9)");
  cover->add_option("--weights", cover_weights,
                    "comma-separated weights over the coordinate forms (default 1,0,...)");
  cover->add_option("--linear", cover_linear,
                    "comma-separated linear part of the probe (default 1,0,...)");
  cover->add_option("--offset", cover_offset, "constant part of the probe (default 0)");
  cover->add_option("--center", cover_center, "ball center (default the origin)");
  cover->add_option("--factor", cover_factor, "gradient-dominance factor c (default 4)");
  cover->add_flag("--strict", cover_strict, "fail when gradient dominance does not hold");

  // catalog
  BudgetFlags catalog_budget;
  unsigned catalog_workers = 0;
  CLI::App* catalog = app.add_subcommand("catalog", "built-in example manifolds and verdicts");
  catalog->add_option("--workers", catalog_workers,
                      "worker threads (default GOODPAIR_WORKERS or 1)");
  add_budget_flags(catalog, catalog_budget);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (verify->parsed())
      return cmd_verify(verify_matrix, verify_budget, resolve_workers(verify_workers),
                        verify_certificate);
    if (search_cmd->parsed()) {
      try {
        search_cfg.mode = search_mode_from_str(search_mode);
      } catch (const ContractError& e) {
        throw UsageError(e.what());
      }
      search_cfg.decide_budget = search_budget.apply(search_cfg.decide_budget);
      search_cfg.workers = resolve_workers(search_workers);
      return cmd_search(search_cfg, search_checkpoint, search_out);
    }
    if (construct->parsed()) return cmd_construct(construct_matrix, construct_out, construct_label);
    if (check2->parsed())
      return cmd_check2(check2_manifold, check2_budget, resolve_workers(check2_workers));
    if (analyze->parsed())
      return cmd_analyze(analyze_n, analyze_l, analyze_tau, analyze_s, analyze_shells);
    if (cover->parsed())
      return cmd_cover(cover_manifold, cover_alpha, cover_ladder, cover_weights, cover_linear,
                       cover_offset, cover_center, cover_factor, cover_strict);
    if (catalog->parsed()) return cmd_catalog(catalog_budget, resolve_workers(catalog_workers));
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kIo;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const ContractError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
