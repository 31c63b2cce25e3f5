#include "goodpair/poly.hpp"

#include <doctest.h>

#include "goodpair/errors.hpp"
#include "goodpair/rational.hpp"
#include "helpers.hpp"

using goodpair::LinearForm;
using goodpair::Monomial;
using goodpair::Poly;
using goodpair::Rational;
using goodpair::Rng;
using testutil::make_poly;
using testutil::point;
using testutil::Q;

TEST_CASE("rational parsing and printing") {
  CHECK(Q("3/6") == Rational(1, 2));
  CHECK(Q("-4/2") == Rational(-2));
  CHECK(Q(" 7 ") == Rational(7));
  CHECK(goodpair::rational_str(Q("3/6")) == "1/2");
  CHECK(goodpair::rational_str(Q("-8")) == "-8");
  CHECK_THROWS_AS(Q("1/0"), goodpair::ParseError);
  CHECK_THROWS_AS(Q("a"), goodpair::ParseError);
  CHECK_THROWS_AS(Q("1.5"), goodpair::ParseError);
  CHECK_THROWS_AS(Q(""), goodpair::ParseError);
}

TEST_CASE("simplest rational in interval") {
  using goodpair::simplest_rational_between;
  CHECK(simplest_rational_between(Q("-1/10"), Q("1/10")) == 0);
  CHECK(simplest_rational_between(Q("1/3"), Q("2/3")) == Q("1/2"));
  CHECK(simplest_rational_between(Q("-11/10"), Q("-9/10")) == Q("-1"));
  CHECK(simplest_rational_between(Q("5/2"), Q("7/2")) == Q("3"));
  CHECK(simplest_rational_between(Q("7/5"), Q("7/5")) == Q("7/5"));
  CHECK(simplest_rational_between(Q("141/100"), Q("142/100")) == Q("17/12"));
  // Result always lands inside the interval.
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    Rational a = rng.uniform_rational(50, 20);
    Rational b = rng.uniform_rational(50, 20);
    if (a > b) std::swap(a, b);
    Rational m = simplest_rational_between(a, b);
    CHECK(a <= m);
    CHECK(m <= b);
  }
}

TEST_CASE("monomial ordering is graded lexicographic") {
  goodpair::TermOrder less;
  Monomial a(std::vector<std::uint32_t>{2, 0});
  Monomial b(std::vector<std::uint32_t>{1, 1});
  Monomial c(std::vector<std::uint32_t>{0, 1});
  CHECK(less(a, b));   // same degree, lex larger first
  CHECK(less(b, c));   // higher degree first
  CHECK(!less(a, a));
}

TEST_CASE("construction and structural equality") {
  Poly zero(2);
  CHECK(zero.is_zero());
  CHECK(zero.var_count() == 2);
  CHECK(zero.degree() == 0);

  Poly p = make_poly(2, {{{2, 0}, "1"}, {{0, 2}, "1"}});
  Poly q = make_poly(2, {{{0, 2}, "1"}, {{2, 0}, "1"}});
  CHECK(p == q);  // term order is canonical, insertion order irrelevant

  Poly cancel = make_poly(2, {{{1, 0}, "1"}, {{1, 0}, "-1"}});
  CHECK(cancel.is_zero());

  Poly z2 = Poly(2), z3 = Poly(3);
  CHECK(z2 != z3);  // zero polynomials of different variable counts differ
}

TEST_CASE("addition and subtraction") {
  Poly p = make_poly(2, {{{2, 0}, "1"}, {{0, 1}, "1"}});
  CHECK(p + Poly(2) == p);
  CHECK(p - p == Poly(2));
  Poly sum = testutil::quartic_sum_form();
  Poly manual = make_poly(3, {{{4, 0, 0}, "1"}}) + make_poly(3, {{{2, 2, 0}, "2"}}) +
                make_poly(3, {{{0, 4, 0}, "1"}}) + make_poly(3, {{{0, 0, 4}, "4"}});
  CHECK(sum == manual);
  CHECK(sum.term_count() == 4);
  CHECK_THROWS_AS(Poly(2) + Poly(3), goodpair::DimensionError);
}

TEST_CASE("multiplication") {
  Poly s = make_poly(2, {{{2, 0}, "1"}, {{0, 2}, "1"}});  // z1^2 + z2^2
  Poly sq = s * s;
  CHECK(sq == make_poly(2, {{{4, 0}, "1"}, {{2, 2}, "2"}, {{0, 4}, "1"}}));
  Poly one = Poly::constant(2, Rational(1));
  CHECK(s * one == s);
  Poly a = make_poly(2, {{{1, 0}, "1"}, {{0, 1}, "1"}});
  Poly b = make_poly(2, {{{1, 0}, "1"}, {{0, 1}, "-1"}});
  CHECK(a * b == make_poly(2, {{{2, 0}, "1"}, {{0, 2}, "-1"}}));
  CHECK((s * Q("-3/2")) == make_poly(2, {{{2, 0}, "-3/2"}, {{0, 2}, "-3/2"}}));
}

TEST_CASE("evaluation") {
  Poly det = testutil::quartic_sum_form();
  CHECK(det.evaluate(point({"1", "0", "0"})) == 1);
  CHECK(det.evaluate(point({"0", "0", "0"})) == 0);
  CHECK(det.evaluate(point({"1/2", "1/2", "1"})) == Q("1/4") + Q("4"));
  Poly neg = testutil::negative_pair_form();
  CHECK(neg.evaluate(point({"3", "4"})) == -25);
  CHECK_THROWS_AS(det.evaluate(point({"1", "2"})), goodpair::DimensionError);
}

TEST_CASE("substitution merges variables") {
  Poly det = testutil::quartic_sum_form();
  std::vector<Poly> images = {Poly::variable(3, 0), Poly::variable(3, 0), Poly::variable(3, 2)};
  Poly merged = det.substitute(images);
  CHECK(merged == make_poly(3, {{{4, 0, 0}, "4"}, {{0, 0, 4}, "4"}}));
}

TEST_CASE("substitution identity and constants") {
  Poly det = testutil::quartic_sum_form();
  std::vector<Poly> id = {Poly::variable(3, 0), Poly::variable(3, 1), Poly::variable(3, 2)};
  CHECK(det.substitute(id) == det);

  Poly neg = testutil::negative_pair_form();
  std::vector<Poly> consts = {Poly::constant(0, Rational(1)), Poly::constant(0, Rational(0))};
  Poly val = neg.substitute(consts);
  CHECK(val.var_count() == 0);
  CHECK(val.evaluate({}) == -1);
}

TEST_CASE("substitution is a ring homomorphism") {
  Rng rng(101);
  for (int trial = 0; trial < 25; ++trial) {
    Poly a = testutil::random_poly(rng, 3, 3, 4);
    Poly b = testutil::random_poly(rng, 3, 3, 4);
    std::vector<Poly> images;
    for (int v = 0; v < 3; ++v) images.push_back(testutil::random_poly(rng, 2, 2, 3));
    CHECK((a + b).substitute(images) == a.substitute(images) + b.substitute(images));
    CHECK((a * b).substitute(images) == a.substitute(images) * b.substitute(images));
  }
}

TEST_CASE("evaluation commutes with substitution") {
  Rng rng(202);
  for (int trial = 0; trial < 25; ++trial) {
    Poly p = testutil::random_poly(rng, 3, 3, 5);
    std::vector<Poly> images;
    for (int v = 0; v < 3; ++v) images.push_back(testutil::random_poly(rng, 2, 2, 3));
    std::vector<Rational> pt = {rng.uniform_rational(4, 3), rng.uniform_rational(4, 3)};
    std::vector<Rational> image_vals;
    for (const auto& img : images) image_vals.push_back(img.evaluate(pt));
    CHECK(p.substitute(images).evaluate(pt) == p.evaluate(image_vals));
  }
}

TEST_CASE("ring axioms hold on random inputs") {
  Rng rng(303);
  for (int trial = 0; trial < 25; ++trial) {
    Poly a = testutil::random_poly(rng, 2, 4, 5);
    Poly b = testutil::random_poly(rng, 2, 4, 5);
    Poly c = testutil::random_poly(rng, 2, 4, 5);
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + (-a) == Poly(2));
  }
}

TEST_CASE("homogeneity degree") {
  CHECK(testutil::quartic_sum_form().homogeneity_degree() == 4);
  CHECK(testutil::negative_pair_form().homogeneity_degree() == 2);
  CHECK(Poly(3).homogeneity_degree() == 0);
  Poly mixed = make_poly(2, {{{1, 0}, "1"}, {{2, 0}, "1"}});
  CHECK(!mixed.homogeneity_degree().has_value());
}

TEST_CASE("homogeneous forms scale by degree") {
  Rng rng(404);
  for (int trial = 0; trial < 20; ++trial) {
    std::uint32_t deg = static_cast<std::uint32_t>(rng.uniform_int(1, 5));
    Poly p = testutil::random_homogeneous_poly(rng, 3, deg, 5);
    REQUIRE(p.homogeneity_degree() == deg);
    Rational t = rng.uniform_rational(5, 3);
    std::vector<Rational> x = {rng.uniform_rational(5, 3), rng.uniform_rational(5, 3),
                               rng.uniform_rational(5, 3)};
    std::vector<Rational> tx = {t * x[0], t * x[1], t * x[2]};
    Rational scale(1);
    for (std::uint32_t i = 0; i < deg; ++i) scale *= t;
    CHECK(p.evaluate(tx) == scale * p.evaluate(x));
  }
}

TEST_CASE("exact division") {
  Poly s = make_poly(2, {{{2, 0}, "1"}, {{0, 2}, "1"}});
  Poly cube = s * s * s;
  CHECK(cube.divide_exact(s) == s * s);
  CHECK(cube.divide_exact(cube) == Poly::constant(2, Rational(1)));
  Poly notdiv = make_poly(2, {{{1, 0}, "1"}});
  CHECK_THROWS_AS(s.divide_exact(notdiv), goodpair::ContractError);
  CHECK_THROWS_AS(s.divide_exact(Poly(2)), goodpair::ContractError);
  Rng rng(505);
  for (int trial = 0; trial < 15; ++trial) {
    Poly a = testutil::random_poly(rng, 2, 3, 4);
    Poly b = testutil::random_poly(rng, 2, 3, 4);
    if (a.is_zero() || b.is_zero()) continue;
    CHECK((a * b).divide_exact(b) == a);
  }
}

TEST_CASE("text rendering") {
  CHECK(Poly(2).to_text() == "0");
  CHECK(testutil::negative_pair_form().to_text() == "-z1^2 - z2^2");
  CHECK(testutil::quartic_sum_form().to_text() == "z1^4 + 2*z1^2*z2^2 + z2^4 + 4*z3^4");
  Poly half = make_poly(1, {{{3}, "-1/2"}, {{0}, "5"}});
  CHECK(half.to_text() == "-1/2*z1^3 + 5");
}

TEST_CASE("linear forms") {
  LinearForm f({Q("2"), Q("0"), Q("-1/2")});
  CHECK(f.to_text() == "2*z1 - 1/2*z3");
  CHECK(f.evaluate(point({"1", "7", "2"})) == 1);
  CHECK(LinearForm(3).is_zero());
  CHECK(LinearForm::unit(3, 1, -1).to_text() == "-z2");
  Poly p = f.to_poly();
  CHECK(p == make_poly(3, {{{1, 0, 0}, "2"}, {{0, 0, 1}, "-1/2"}}));
  CHECK((f + (-f)).is_zero());
  CHECK((f * Q("2")).coeff(2) == -1);
}

TEST_CASE("linear substitution matches polynomial substitution") {
  Poly det = testutil::quartic_sum_form();
  std::vector<LinearForm> forms = {LinearForm({Q("1"), Q("1")}), LinearForm({Q("0"), Q("1")}),
                                   LinearForm({Q("1"), Q("0")})};
  std::vector<Poly> images;
  for (const auto& f : forms) images.push_back(f.to_poly());
  CHECK(det.substitute_linear(forms) == det.substitute(images));
}

TEST_CASE("content hash distinguishes structure") {
  Poly a = testutil::quartic_sum_form();
  Poly b = testutil::quartic_sum_form();
  CHECK(a.content_hash() == b.content_hash());
  Poly c = a + Poly::constant(3, Rational(1));
  CHECK(a.content_hash() != c.content_hash());
}
