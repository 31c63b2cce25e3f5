// Acceptance gate: nine end-to-end checks, one line of output each, exit
// code equal to the number of failures. Budgets that are part of a check are
// enforced; the line shows the measured wall time either way.

#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "goodpair/definiteness.hpp"
#include "goodpair/gbsp.hpp"
#include "goodpair/manifolds.hpp"
#include "goodpair/matrices.hpp"
#include "goodpair/poly.hpp"
#include "goodpair/search.hpp"
#include "helpers.hpp"

using namespace goodpair;
using namespace testutil;

namespace {

struct Gate {
  int failures = 0;

  template <class F>
  void run(int num, const std::string& label, double budget_seconds, F body) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
      ok = body(note);
    } catch (const std::exception& e) {
      ok = false;
      note = std::string("threw: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && budget_seconds > 0 && secs > budget_seconds) {
      ok = false;
      std::ostringstream over;
      over << "over budget: " << secs << "s > " << budget_seconds << "s";
      note = over.str();
    }
    if (!ok) ++failures;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << num << ". " << label << " (" << std::fixed
              << std::setprecision(1) << secs << "s)";
    if (!note.empty()) std::cout << " -- " << note;
    std::cout << "\n" << std::flush;
  }
};

bool fail(std::string& note, const std::string& why) {
  note = why;
  return false;
}

Rational Qs(const std::string& s) { return parse_rational(s); }

// H1 = H2 = diag(2, -2): the untwisted pencil whose determinant is the
// semidefinite square -4 (s1 + s2)^2.
QuadraticSystem untwisted_system() {
  QuadraticSystem sys = zero_system(2, 2);
  for (std::size_t u = 0; u < 2; ++u) {
    sys.forms[u][0][0] = 2;
    sys.forms[u][1][1] = -2;
  }
  return sys;
}

CoverProbe graph_probe(const ManifoldSpec& spec) {
  CoverProbe probe;
  std::vector<Rational> weights(spec.l, Rational(0));
  weights[0] = 1;
  std::vector<Rational> linear(spec.system.dim, Rational(0));
  linear[0] = 1;
  probe.phi = probe_function(spec.system, weights, linear, Rational(0));
  probe.center.assign(spec.system.dim, Rational(0));
  probe.alpha = 1;
  return probe;
}

}  // namespace

int main() {
  Gate gate;

  gate.run(1, "determinant of the size-4 reference matrix", 1.0, [](std::string& note) {
    const Poly det = det_symbolic(pair37());
    if (det != quartic_sum_form())
      return fail(note, "det came out as " + det.to_text());
    return true;
  });

  gate.run(2, "size-2 reference determinant and certificate", 1.0, [](std::string& note) {
    const Poly det = det_symbolic(pair24());
    if (det != negative_pair_form()) return fail(note, "det came out as " + det.to_text());
    const DefinitenessVerdict v = decide(det);
    if (v.kind != VerdictKind::NegativeDefinite)
      return fail(note, "verdict " + verdict_kind_str(v.kind));
    if (!verify_certificate(det, v)) return fail(note, "certificate did not re-verify");
    return true;
  });

  gate.run(3, "two-form pencil coefficients across deltas", 0, [](std::string& note) {
    for (const char* text : {"2", "-2", "1", "-1", "1/2", "-1/2"}) {
      const Rational delta = Qs(text);
      const Ex1Coefficients c = ex1_coefficients(m_delta(delta).system);
      if (c.a1 != Rational(-4) - delta * delta || c.a2 != Rational(-4) || c.a3 != Rational(-8))
        return fail(note, std::string("coefficients off at delta = ") + text);
      if (!ex1_criterion_holds(c))
        return fail(note, std::string("criterion failed at delta = ") + text);
    }
    const QuadraticSystem flat = untwisted_system();
    const Ex1Coefficients c0 = ex1_coefficients(flat);
    if (ex1_criterion_holds(c0)) return fail(note, "criterion held at delta = 0");
    const DefinitenessVerdict v0 = decide(det_symbolic(lambda_matrix(flat)));
    if (v0.kind != VerdictKind::Indefinite)
      return fail(note, "delta = 0 verdict " + verdict_kind_str(v0.kind));
    return true;
  });

  gate.run(4, "system construction matches determinant substitution", 0,
           [](std::string& note) {
             Rng rng(20260817);
             for (int i = 0; i < 100; ++i) {
               const std::size_t l = 2 + static_cast<std::size_t>(rng.uniform_int(0, 1));
               const std::size_t size = 2 + static_cast<std::size_t>(rng.uniform_int(0, 2));
               const SymbolicMatrix m = random_alphabet_matrix(rng, l, size);
               std::vector<LinearForm> images;
               for (std::size_t v = 0; v < l; ++v) {
                 LinearForm f(l);
                 f.set_coeff(v, Rational(rng.uniform_int(0, 1) == 0 ? 1 : -1));
                 for (std::size_t w = v + 1; w < l; ++w)
                   f.set_coeff(w, Rational(rng.uniform_int(-3, 3)));
                 images.push_back(f);
               }
               const QuadraticSystem sys = build_quadratic_system(m, images);
               const Poly direct = det_symbolic(lambda_matrix(sys));
               const Poly expected = det_symbolic(m).substitute_linear(images);
               if (direct != expected) {
                 return fail(note, "mismatch at instance " + std::to_string(i));
               }
             }
             return true;
           });

  gate.run(5, "search rediscovers both reference matrices", 0, [](std::string& note) {
    SearchConfig small;
    small.l = 2;
    small.n = 4;
    const SearchReport r24 = search(small);
    if (!r24.exhaustive) return fail(note, "(2,4) search did not close the space");
    const std::string id24 = canonical_id(canonical_form(pair24()));
    bool found24 = false;
    for (const GoodPairCandidate& c : r24.accepted) {
      if (c.matrix == canonical_form(pair24()) && c.canonical_id == id24) found24 = true;
    }
    if (!found24) return fail(note, "(2,4) canonical class missing from the accepted set");

    SearchConfig big;
    big.l = 3;
    big.n = 7;
    const SearchReport r37 = search(big);
    if (!r37.exhaustive) return fail(note, "(3,7) search did not close the space");
    std::size_t definite = 0;
    bool found37 = false;
    const std::string id37 = canonical_id(canonical_form(pair37()));
    for (const GoodPairCandidate& c : r37.accepted) {
      if (c.verdict.kind == VerdictKind::PositiveDefinite ||
          c.verdict.kind == VerdictKind::NegativeDefinite)
        ++definite;
      if (c.canonical_id == id37) found37 = true;
    }
    if (definite == 0) return fail(note, "(3,7) search accepted no definite candidate");
    if (!found37) return fail(note, "(3,7) reference class missing from the accepted set");
    note = "(3,7) accepted " + std::to_string(r37.accepted.size()) + " classes";
    return true;
  });

  gate.run(6, "obstructed pairs exhaust with zero candidates", 0, [](std::string& note) {
    SearchConfig odd;
    odd.l = 2;
    odd.n = 5;
    odd.force = true;
    odd.record_refutations = true;
    const SearchReport r25 = search(odd);
    if (!r25.exhaustive || !r25.accepted.empty())
      return fail(note, "(2,5) did not exhaust to zero candidates");
    if (r25.counters.unknown != 0) return fail(note, "(2,5) left unknowns behind");
    if (r25.refutations.size() != r25.counters.scanned)
      return fail(note, "(2,5) refutations do not cover every scanned matrix");
    for (const RefutationRecord& rec : r25.refutations) {
      if (!verify_witness(det_symbolic(rec.matrix), rec.witness))
        return fail(note, "a (2,5) refutation witness failed to verify");
    }

    SearchConfig low;
    low.l = 3;
    low.n = 5;
    low.force = true;
    const SearchReport r35 = search(low);
    if (!r35.exhaustive || !r35.accepted.empty())
      return fail(note, "(3,5) did not exhaust to zero candidates");
    note = "(2,5) refuted all " + std::to_string(r25.counters.scanned) + " matrices exactly";
    return true;
  });

  gate.run(7, "block composition and variable merging stay definite", 0,
           [](std::string& note) {
             const SymbolicMatrix doubled = block_compose(pair24(), pair24());
             const Poly square = det_symbolic(doubled);
             const Poly expected_square =
                 make_poly(2, {{{4, 0}, "1"}, {{2, 2}, "2"}, {{0, 4}, "1"}});
             if (square != expected_square)
               return fail(note, "block determinant came out as " + square.to_text());
             const DefinitenessVerdict vs = decide(square);
             if (vs.kind != VerdictKind::PositiveDefinite)
               return fail(note, "block verdict " + verdict_kind_str(vs.kind));
             if (!verify_certificate(square, vs))
               return fail(note, "block certificate did not re-verify");

             const SymbolicMatrix merged = specialize_vars(pair37(), {{0, 1}, {2}});
             const Poly quartic = det_symbolic(merged);
             const Poly expected_quartic = make_poly(2, {{{4, 0}, "4"}, {{0, 4}, "4"}});
             if (quartic != expected_quartic)
               return fail(note, "merged determinant came out as " + quartic.to_text());
             const DefinitenessVerdict vq = decide(quartic);
             if (vq.kind != VerdictKind::PositiveDefinite)
               return fail(note, "merged verdict " + verdict_kind_str(vq.kind));
             if (!verify_certificate(quartic, vq))
               return fail(note, "merged certificate did not re-verify");
             return true;
           });

  gate.run(8, "volume series dichotomy at five hundred shells", 30.0, [](std::string& note) {
    if (critical_exponent(7, 3, Rational(7)) != Rational(4))
      return fail(note, "critical exponent is not 4");

    PowerLawData convergent;
    convergent.n = 7;
    convergent.l = 3;
    convergent.tau = 7;
    convergent.s = 5;
    const std::vector<Rational> sums = series_oracle(convergent, 500);
    // T(500)/T(250) < 1.01, cleared of the division.
    if (!(sums[499] * 100 < sums[249] * 101))
      return fail(note, "partial sums kept growing past the tail bound");

    PowerLawData divergent = convergent;
    divergent.s = 3;
    if (!(shell_term(divergent, 500) > shell_term(divergent, 1) / 2))
      return fail(note, "divergent shell terms decayed");
    return true;
  });

  gate.run(9, "covering slopes along the dyadic ladder", 300.0, [](std::string& note) {
    CoverProbe slab;
    slab.phi.a = 0;
    slab.phi.r = {Rational(1), Rational(0)};
    slab.phi.h = {{Rational(0), Rational(0)}, {Rational(0), Rational(0)}};
    slab.center = {Rational(0), Rational(0)};
    slab.alpha = 1;
    const double s1 = covering_slope(slab, 3, 9).slope;
    if (std::abs(s1 - 1.0) > 0.1)
      return fail(note, "slab slope " + std::to_string(s1));

    const double s2 = covering_slope(graph_probe(m_delta(1)), 3, 9).slope;
    if (std::abs(s2 - 1.0) > 0.3)
      return fail(note, "surface slope " + std::to_string(s2));

    const double s3 = covering_slope(graph_probe(m37_manifold()), 3, 9).slope;
    if (std::abs(s3 - 3.0) > 0.3)
      return fail(note, "dimension-4 slope " + std::to_string(s3));

    std::ostringstream got;
    got << "slopes " << s1 << ", " << s2 << ", " << s3;
    note = got.str();
    return true;
  });

  std::cout << (gate.failures == 0 ? "all criteria hold"
                                   : std::to_string(gate.failures) + " criteria failed")
            << "\n";
  return gate.failures;
}
