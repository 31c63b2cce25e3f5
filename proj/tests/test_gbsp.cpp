#include <doctest.h>

#include <cstdint>
#include <vector>

#include "goodpair/errors.hpp"
#include "goodpair/gbsp.hpp"
#include "goodpair/manifolds.hpp"
#include "helpers.hpp"

using namespace goodpair;
using namespace testutil;

namespace {

PowerLawData data(std::size_t n, std::size_t l, const Rational& tau, const Rational& s) {
  PowerLawData d;
  d.n = n;
  d.l = l;
  d.tau = tau;
  d.s = s;
  return d;
}

CoverProbe slab_probe() {
  CoverProbe probe;
  probe.phi.a = 0;
  probe.phi.r = {Rational(1), Rational(0)};
  probe.phi.h = {{Rational(0), Rational(0)}, {Rational(0), Rational(0)}};
  probe.center = {Rational(0), Rational(0)};
  probe.alpha = 1;
  return probe;
}

CoverProbe m_delta_probe() {
  CoverProbe probe;
  probe.phi = probe_function(m_delta(1).system, {Rational(1), Rational(0)},
                             {Rational(1), Rational(0)}, Rational(0));
  probe.center = {Rational(0), Rational(0)};
  probe.alpha = 1;
  return probe;
}

// Reference count: visits every cell and applies the same per-term interval
// arithmetic as the library, with plain rationals and no subdivision or
// column tricks.
std::uint64_t brute_cover(const CoverProbe& probe, const Rational& delta) {
  const std::size_t dim = probe.phi.r.size();
  const Rational ratio = Rational(2) * probe.alpha / delta;
  REQUIRE(ratio.get_den() == 1);
  const std::uint64_t m = mpz_get_ui(ratio.get_num().get_mpz_t());

  std::vector<Rational> base(dim);
  for (std::size_t i = 0; i < dim; ++i) base[i] = probe.center[i] - probe.alpha;
  const Rational a0 = qf_value(probe.phi, base);
  const std::vector<Rational> gb = qf_gradient(probe.phi, base);
  std::vector<Rational> lin(dim);
  for (std::size_t i = 0; i < dim; ++i) lin[i] = delta * gb[i];
  std::vector<std::vector<Rational>> quad(dim, std::vector<Rational>(dim, Rational(0)));
  for (std::size_t i = 0; i < dim; ++i) {
    quad[i][i] = delta * delta * probe.phi.h[i][i] / 2;
    for (std::size_t j = i + 1; j < dim; ++j) quad[i][j] = delta * delta * probe.phi.h[i][j];
  }
  const std::vector<Rational> gc = qf_gradient(probe.phi, probe.center);
  Rational g2(0);
  for (const Rational& g : gc) g2 += g * g;
  const Rational t2 = g2 * delta * delta;

  std::vector<std::uint64_t> cell(dim, 0);
  std::uint64_t count = 0;
  while (true) {
    Rational lo = a0, hi = a0;
    for (std::size_t i = 0; i < dim; ++i) {
      if (lin[i] == 0) continue;
      const Rational p1 = lin[i] * Rational(static_cast<unsigned long>(cell[i]));
      const Rational p2 = lin[i] * Rational(static_cast<unsigned long>(cell[i] + 1));
      if (lin[i] > 0) {
        lo += p1;
        hi += p2;
      } else {
        lo += p2;
        hi += p1;
      }
    }
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = i; j < dim; ++j) {
        if (quad[i][j] == 0) continue;
        const Rational p1 =
            quad[i][j] * Rational(static_cast<unsigned long>(cell[i] * cell[j]));
        const Rational p2 =
            quad[i][j] * Rational(static_cast<unsigned long>((cell[i] + 1) * (cell[j] + 1)));
        if (quad[i][j] > 0) {
          lo += p1;
          hi += p2;
        } else {
          lo += p2;
          hi += p1;
        }
      }
    }
    const bool out = (lo > 0 && lo * lo >= t2) || (hi < 0 && hi * hi >= t2);
    if (!out) ++count;

    std::size_t pos = 0;
    for (; pos < dim; ++pos) {
      if (++cell[pos] < m) break;
      cell[pos] = 0;
    }
    if (pos == dim) break;
  }
  return count;
}

}  // namespace

TEST_CASE("critical exponents are exact rationals") {
  CHECK(critical_exponent(7, 3, Rational(7)) == Rational(4));
  CHECK(critical_exponent(4, 1, Rational(4)) == Rational(3));
  CHECK(critical_exponent(7, 3, Q("7/2")) == Q("43/9"));
  CHECK(critical_exponent_limit(7, 3) == Rational(3));
  CHECK(critical_exponent_limit(4, 1) == Rational(2));

  // Larger tau pulls the exponent down toward the limit.
  CHECK(critical_exponent(7, 3, Rational(7)) > critical_exponent(7, 3, Rational(70)));
  CHECK(critical_exponent(7, 3, Rational(70)) > critical_exponent_limit(7, 3));

  CHECK_THROWS_AS(critical_exponent(3, 3, Rational(3)), ContractError);
  CHECK_THROWS_AS(critical_exponent(2, 0, Rational(2)), ContractError);
  CHECK_THROWS_AS(critical_exponent(4, 1, Rational(0)), ContractError);
  CHECK_THROWS_AS(critical_exponent_limit(1, 1), ContractError);
}

TEST_CASE("series classification pivots at the critical exponent") {
  const std::vector<std::pair<std::pair<std::size_t, std::size_t>, Rational>> instances = {
      {{7, 3}, Rational(7)},  {{4, 1}, Rational(4)}, {{5, 2}, Rational(5)},
      {{6, 2}, Rational(8)},  {{9, 4}, Q("19/2")},
  };
  for (const auto& [nl, tau] : instances) {
    const Rational s_star = critical_exponent(nl.first, nl.second, tau);
    CHECK(shell_exponent(data(nl.first, nl.second, tau, s_star)) == Rational(-1));
    CHECK(classify_series(data(nl.first, nl.second, tau, s_star)) == SeriesClass::Critical);
    CHECK(classify_series(data(nl.first, nl.second, tau, s_star + Q("1/7"))) ==
          SeriesClass::Convergent);
    CHECK(classify_series(data(nl.first, nl.second, tau, s_star - Q("1/7"))) ==
          SeriesClass::Divergent);
  }
  CHECK(series_class_str(SeriesClass::Critical) == "Critical");
  CHECK(series_class_str(SeriesClass::Convergent) == "Convergent");
  CHECK(series_class_str(SeriesClass::Divergent) == "Divergent");

  CHECK_THROWS_AS(classify_series(data(7, 3, Rational(5), Rational(4))), ContractError);
  CHECK_THROWS_AS(classify_series(data(7, 3, Rational(7), Rational(0))), ContractError);
  CHECK_THROWS_AS(classify_series(data(3, 3, Rational(3), Rational(1))), ContractError);
}

TEST_CASE("shell counts match a direct lattice walk") {
  CHECK(shell_count(3, 1) == 26);
  CHECK(shell_count(3, 2) == 98);
  CHECK(shell_count(3, 3) == 218);
  CHECK(shell_count(7, 1) == 2186);  // 3^7 - 1

  for (std::uint64_t q = 1; q <= 4; ++q) {
    // n = 2: ring of sup-norm q has 8q points.
    CHECK(shell_count(2, q) == Integer(static_cast<unsigned long>(8 * q)));
  }

  CHECK_THROWS_AS(shell_count(0, 1), ContractError);
  CHECK_THROWS_AS(shell_count(3, 0), ContractError);
}

TEST_CASE("shell terms and partial sums are exact") {
  const PowerLawData d = data(7, 3, Rational(7), Rational(5));
  const std::vector<Rational> partial = series_oracle(d, 4);
  REQUIRE(partial.size() == 4);
  CHECK(partial[0] == Rational(2186));
  CHECK(partial[1] == Q("35853393/16384"));
  CHECK(partial[2] == Q("514469214719963/235092492288"));
  CHECK(partial[3] == Q("16858155634661471275/7703510787293184"));

  Rational sum(0);
  for (std::uint64_t q = 1; q <= 4; ++q) sum += shell_term(d, q);
  CHECK(sum == partial[3]);
}

TEST_CASE("convergent tails shrink and divergent terms grow") {
  const PowerLawData conv = data(7, 3, Rational(7), Rational(5));
  REQUIRE(classify_series(conv) == SeriesClass::Convergent);
  for (std::uint64_t q = 1; q < 20; ++q) CHECK(shell_term(conv, q + 1) < shell_term(conv, q));

  const PowerLawData div = data(7, 3, Rational(7), Rational(3));
  REQUIRE(classify_series(div) == SeriesClass::Divergent);
  for (std::uint64_t q = 1; q < 20; ++q) {
    CHECK(shell_term(div, q + 1) > shell_term(div, q));
    CHECK(shell_term(div, q) >= shell_term(div, 1));
  }
}

TEST_CASE("series budgets and exactness guards") {
  const PowerLawData d = data(7, 3, Rational(7), Rational(3));
  // A single shell: every vector of sup norm 1.
  const std::vector<Rational> one = series_oracle(d, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == Rational(shell_count(7, 1)));

  CHECK_THROWS_AS(series_oracle(d, 0), ContractError);
  CHECK_THROWS_AS(series_oracle(d, 10001), ContractError);
  CHECK_THROWS_AS(shell_term(d, 0), ContractError);

  // Fractional per-vector exponent: rejected for shells, fine to classify.
  const PowerLawData frac = data(7, 3, Rational(7), Q("1/3"));
  CHECK_THROWS_AS(shell_term(frac, 2), ContractError);
  CHECK(classify_series(frac) == SeriesClass::Divergent);
}

TEST_CASE("slab membership accepts exactly the near points") {
  const ManifoldSpec md = m_delta(1);

  // The origin lies on every zero slab.
  const std::vector<Rational> zero = point({"0", "0"});
  CHECK(sq_p_membership(zero, md, {1, 0, 0, 0}, 0, Rational(0), Rational(7)));
  CHECK_FALSE(sq_p_membership(zero, md, {1, 0, 0, 0}, 1, Rational(0), Rational(7)));

  // q picks the difference of the two forms; at (1,1) they give 1 and 0.
  const std::vector<Rational> ones = point({"1", "1"});
  CHECK(sq_p_membership(ones, md, {0, 0, 1, -1}, 1, Rational(0), Rational(7)));

  // Fractional tau: |V| < 2^(-7/2) comparisons cleared by squaring.
  CHECK_FALSE(sq_p_membership(point({"1/16", "0"}), md, {2, 0, 0, 0}, 0, Rational(0), Q("7/2")));
  CHECK(sq_p_membership(point({"1/24", "0"}), md, {2, 0, 0, 0}, 0, Rational(0), Q("7/2")));

  // A nonzero offset shifts the slab.
  CHECK(sq_p_membership(zero, md, {1, 0, 0, 0}, -1, Rational(1), Rational(7)));

  CHECK_THROWS_AS(sq_p_membership(zero, md, {0, 0, 0, 0}, 0, Rational(0), Rational(7)),
                  ContractError);
  CHECK_THROWS_AS(sq_p_membership(zero, md, {1, 0, 0}, 0, Rational(0), Rational(7)),
                  ContractError);
  CHECK_THROWS_AS(sq_p_membership(point({"1"}), md, {1, 0, 0, 0}, 0, Rational(0), Rational(7)),
                  ContractError);
  CHECK_THROWS_AS(sq_p_membership(zero, md, {1, 0, 0, 0}, 0, Rational(0), Rational(-1)),
                  ContractError);

  // Same inputs, same verdict.
  for (int rep = 0; rep < 3; ++rep)
    CHECK(sq_p_membership(ones, md, {0, 0, 1, -1}, 1, Rational(0), Rational(7)));
}

TEST_CASE("probe functions assemble from quadratic systems") {
  const QuadraticFunction f = probe_function(m_delta(1).system, {Rational(1), Rational(0)},
                                             {Rational(1), Rational(0)}, Rational(0));
  // phi(x, y) = x + x^2 + xy - y^2.
  CHECK(qf_value(f, point({"1", "2"})) == Rational(0));
  CHECK(qf_value(f, point({"0", "0"})) == Rational(0));
  const std::vector<Rational> g = qf_gradient(f, point({"1", "2"}));
  REQUIRE(g.size() == 2);
  CHECK(g[0] == Rational(5));
  CHECK(g[1] == Rational(-3));

  CHECK_THROWS_AS(probe_function(m_delta(1).system, {Rational(1)}, {Rational(1), Rational(0)},
                                 Rational(0)),
                  ContractError);
  CHECK_THROWS_AS(probe_function(m_delta(1).system, {Rational(1), Rational(0)}, {Rational(1)},
                                 Rational(0)),
                  ContractError);

  QuadraticFunction bad;
  bad.a = 0;
  bad.r = {Rational(1), Rational(0)};
  bad.h = {{Rational(0), Rational(1)}, {Rational(2), Rational(0)}};
  CHECK_THROWS_AS(qf_value(bad, point({"0", "0"})), ContractError);
}

TEST_CASE("covering counts match a direct interval sweep") {
  const CoverProbe slab = slab_probe();
  for (unsigned k = 3; k <= 6; ++k) {
    const Rational delta = Rational(1) / Rational(static_cast<unsigned long>(1ul << k));
    const CoverCount c = covering_count(slab, delta);
    CHECK(c.cells == (1ull << (k + 2)));  // two columns of 2^(k+1) rows
    CHECK(c.cells_per_axis == (1ull << (k + 1)));
    CHECK(c.cells == brute_cover(slab, delta));
  }

  const CoverProbe md = m_delta_probe();
  for (unsigned k = 3; k <= 5; ++k) {
    const Rational delta = Rational(1) / Rational(static_cast<unsigned long>(1ul << k));
    CHECK(covering_count(md, delta).cells == brute_cover(md, delta));
  }

  // Off-center probe with a shifted box and mixed signs.
  CoverProbe shifted;
  shifted.phi.a = Q("1/3");
  shifted.phi.r = {Rational(1), Rational(-1)};
  shifted.phi.h = {{Rational(2), Rational(1)}, {Rational(1), Rational(-2)}};
  shifted.center = {Q("1/2"), Q("-1/4")};
  shifted.alpha = Q("3/4");
  const Rational d3 = shifted.alpha / Rational(8);
  CHECK(covering_count(shifted, d3).cells == brute_cover(shifted, d3));

  // Concave fiber: negative leading coefficient along the steep axis.
  CoverProbe concave;
  concave.phi.a = 0;
  concave.phi.r = {Rational(1), Rational(0)};
  concave.phi.h = {{Rational(-2), Rational(1)}, {Rational(1), Rational(2)}};
  concave.center = {Rational(0), Rational(0)};
  concave.alpha = 1;
  for (unsigned k = 3; k <= 4; ++k) {
    const Rational delta = Rational(1) / Rational(static_cast<unsigned long>(1ul << k));
    CHECK(covering_count(concave, delta).cells == brute_cover(concave, delta));
  }

  // Huge coefficients push the computation onto the plain rational path.
  CoverProbe big;
  big.phi.a = 0;
  big.phi.r = {Rational(1), Rational(0)};
  const Rational huge = Rational(Integer("10000000000000000000")) / 3;
  big.phi.h = {{huge, Rational(0)}, {Rational(0), -huge}};
  big.center = {Rational(0), Rational(0)};
  big.alpha = 1;
  const Rational d8 = Q("1/8");
  CHECK(covering_count(big, d8).cells == brute_cover(big, d8));
  CHECK(covering_count(big, d8).cells == 182);
}

TEST_CASE("gradient dominance is advisory unless strict") {
  const CoverProbe slab = slab_probe();
  CHECK(covering_count(slab, Q("1/8")).precondition_ok);

  CoverProbe md = m_delta_probe();
  const CoverCount c = covering_count(md, Q("1/8"));
  CHECK_FALSE(c.precondition_ok);  // |grad| = 1 cannot dominate 4 * alpha * |hess|
  CHECK(c.cells > 0);

  md.strict = true;
  CHECK_THROWS_WITH_AS(covering_count(md, Q("1/8")),
                       doctest::Contains("gradient-dominance"), ContractError);

  // A generous ball shrinks the right side below the gradient.
  md.strict = true;
  md.alpha = Q("1/100");
  CHECK(covering_count(md, Q("1/200")).precondition_ok);
}

TEST_CASE("covering contract violations are rejected") {
  const CoverProbe slab = slab_probe();
  CHECK_THROWS_AS(covering_count(slab, Rational(2)), ContractError);   // delta > alpha
  CHECK_THROWS_AS(covering_count(slab, Q("3/7")), ContractError);      // ragged grid
  CHECK_THROWS_AS(covering_count(slab, Rational(0)), ContractError);
  CHECK_THROWS_AS(covering_count(slab, Q("-1/8")), ContractError);

  CoverProbe thin;
  thin.phi.a = 0;
  thin.phi.r = {Rational(1)};
  thin.phi.h = {{Rational(0)}};
  thin.center = {Rational(0)};
  thin.alpha = 1;
  CHECK_THROWS_AS(covering_count(thin, Q("1/8")), ContractError);  // dim 1

  CoverProbe flat = slab_probe();
  flat.phi.r = {Rational(0), Rational(0)};
  flat.phi.h = {{Rational(2), Rational(0)}, {Rational(0), Rational(2)}};
  CHECK_THROWS_AS(covering_count(flat, Q("1/8")), ContractError);  // zero gradient at center

  CoverProbe off = slab_probe();
  off.center = {Rational(0)};
  CHECK_THROWS_AS(covering_count(off, Q("1/8")), ContractError);

  CoverProbe negc = slab_probe();
  negc.c = Rational(0);
  CHECK_THROWS_AS(covering_count(negc, Q("1/8")), ContractError);

  CHECK_THROWS_AS(covering_slope(slab_probe(), 0, 5), ContractError);
  CHECK_THROWS_AS(covering_slope(slab_probe(), 5, 3), ContractError);
  CHECK_THROWS_AS(covering_slope(slab_probe(), 3, 31), ContractError);
}

TEST_CASE("ladder slopes recover the expected exponents") {
  const CoverSlope slab = covering_slope(slab_probe(), 3, 9);
  REQUIRE(slab.rungs.size() == 7);
  CHECK(slab.slope == doctest::Approx(1.0).epsilon(1e-9));
  for (std::size_t i = 0; i < slab.rungs.size(); ++i)
    CHECK(slab.rungs[i].cells == (1ull << (i + 5)));

  const CoverSlope md = covering_slope(m_delta_probe(), 3, 9);
  CHECK(md.slope > 0.7);
  CHECK(md.slope < 1.3);

  // Frozen small rungs of the dim-4 probe; the full ladder lives in the
  // acceptance run.
  CoverProbe m37;
  m37.phi = probe_function(m37_manifold().system, {Rational(1), Rational(0), Rational(0)},
                           {Rational(1), Rational(0), Rational(0), Rational(0)}, Rational(0));
  m37.center = {Rational(0), Rational(0), Rational(0), Rational(0)};
  m37.alpha = 1;
  CHECK(covering_count(m37, Q("1/4")).cells == 3797);
  CHECK(covering_count(m37, Q("1/8")).cells == 35853);
  CHECK(covering_count(m37, Q("1/16")).cells == 284127);
}
