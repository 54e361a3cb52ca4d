// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "eqrefute/constraints.hpp"
#include "eqrefute/template_poly.hpp"

using namespace eqrefute;

namespace {

Polynomial xvar(size_t n, size_t i) { return Polynomial::variable(n, i); }

TemplatePoly concrete(const Polynomial& p) { return TemplatePoly::from_concrete(p); }

}  // namespace

TEST_CASE("fresh templates allocate one unknown per monomial") {
    TemplateSpace space;
    TemplatePoly t = TemplatePoly::fresh(space, "u", 2, 2);
    CHECK(space.size() == 6);  // 1, x, y, x^2, xy, y^2
    CHECK(t.terms().size() == 6);
    CHECK(space.name(0) == "u_0");
    CHECK(space.name(5) == "u_5");
    // Ids are dense and deterministic.
    TemplatePoly s = TemplatePoly::fresh(space, "v", 1, 1);
    CHECK(space.size() == 8);
    CHECK(space.name(6) == "v_0");
}

TEST_CASE("affine form arithmetic") {
    AffineForm a = AffineForm::var(0).scaled(2) + AffineForm(Rational(3));
    AffineForm b = AffineForm::var(1) - AffineForm::var(0);
    AffineForm c = a + b;  // t0 + t1 + 3
    CHECK(c.evaluate({Rational(5), Rational(7)}) == Rational(15));
    CHECK((a - a).is_zero());
    CHECK(AffineForm(Rational(2)).is_constant());
    // Cancelled coefficients are not stored.
    AffineForm d = AffineForm::var(0) - AffineForm::var(0);
    CHECK(d.terms.empty());
}

TEST_CASE("instantiate and evaluate_at commute") {
    TemplateSpace space;
    TemplatePoly t = TemplatePoly::fresh(space, "w", 2, 2);
    std::vector<Rational> assign{Rational(1), Rational(-2), Rational(3),
                                 Rational(1) / 2, Rational(0), Rational(5)};
    std::vector<Rational> pt{Rational(2), Rational(-1)};
    Polynomial fixed = t.instantiate(assign);
    CHECK(fixed.evaluate(pt) == t.evaluate_at(pt).evaluate(assign));
}

TEST_CASE("substitution by a concrete polynomial") {
    // q = t0 * x^2 composed with x := x + 1 gives t0 * (x + 1)^2.
    TemplateSpace space;
    TemplatePoly q = TemplatePoly::fresh(space, "q", 1, 2);
    Polynomial x = xvar(1, 0);
    TemplatePoly shifted = q.substitute(0, x + Polynomial::constant(1, Rational(1)));
    std::vector<Rational> assign{Rational(0), Rational(0), Rational(1)};  // q = x^2
    Polynomial inst = shifted.instantiate(assign);
    CHECK(inst == x * x + x.scaled(2) + Polynomial::constant(1, Rational(1)));
}

TEST_CASE("expectation elimination uses exact raw moments") {
    DistributionSpec die;
    die.kind = DistKind::UniformInt;
    die.a = Rational(1);
    die.b = Rational(6);
    Polynomial x = xvar(1, 0);
    TemplatePoly q = concrete(x * x);
    TemplatePoly e = q.expectation_substitute(0, die);
    Polynomial inst = e.instantiate({});
    // E[X^2] for a fair die is 91/6.
    CHECK(inst == Polynomial::constant(1, Rational(91) / 6));
}

TEST_CASE("embedding maps variables into a larger universe") {
    // f(a, b) = a - b over outputs embeds into a 4-variable program space.
    TemplateSpace space;
    TemplatePoly f = TemplatePoly::fresh(space, "f", 2, 1);
    TemplatePoly g = f.embed(4, {3, 1});
    std::vector<Rational> assign{Rational(0), Rational(1), Rational(-1)};  // a - b
    Polynomial inst = g.instantiate(assign);
    Polynomial expect = xvar(4, 3) - xvar(4, 1);
    CHECK(inst == expect);
}

TEST_CASE("pre-expectation over a probabilistic split") {
    // source 0 branches to 1 w.p. 3/10 and 2 w.p. 7/10, no update.
    Transition t;
    t.source = 0;
    t.guard = LinearPredicate::top();
    t.successors = {{1, Rational(3) / 10}, {2, Rational(7) / 10}};
    t.update = UpdateNone{};
    Polynomial x = xvar(1, 0);
    std::vector<TemplatePoly> q{concrete(Polynomial::constant(1, Rational(0))),
                                concrete(x.scaled(2)), concrete(x.scaled(3))};
    TemplatePoly g = concrete(x);
    // 3/10 (2x + x) + 7/10 (3x + x) = 37/10 x.
    Polynomial pre = pre_expectation(q, t, g).instantiate({});
    CHECK(pre == x.scaled(Rational(37) / 10));
}

TEST_CASE("pre-expectation composes deterministic updates") {
    Transition t;
    t.source = 0;
    t.guard = LinearPredicate::top();
    t.successors = {{1, Rational(1)}};
    Polynomial x = xvar(1, 0);
    t.update = UpdateDet{0, x + Polynomial::constant(1, Rational(1))};
    std::vector<TemplatePoly> q{concrete(Polynomial::constant(1, Rational(0))),
                                concrete(x * x)};
    Polynomial pre = pre_expectation(q, t, concrete(Polynomial(1))).instantiate({});
    CHECK(pre == (x + Polynomial::constant(1, Rational(1))).pow(2));
}

TEST_CASE("pre-expectation integrates sampled updates") {
    Transition t;
    t.source = 0;
    t.guard = LinearPredicate::top();
    t.successors = {{1, Rational(1)}};
    DistributionSpec die;
    die.kind = DistKind::UniformInt;
    die.a = Rational(1);
    die.b = Rational(6);
    t.update = UpdateSample{0, die};
    Polynomial x = xvar(1, 0);
    std::vector<TemplatePoly> q{concrete(Polynomial::constant(1, Rational(0))),
                                concrete(x * x - x)};
    // E[X^2 - X] = 91/6 - 7/2 = 35/3.
    Polynomial pre = pre_expectation(q, t, concrete(Polynomial(1))).instantiate({});
    CHECK(pre == Polynomial::constant(1, Rational(35) / 3));
}

TEST_CASE("premise closure tightens strict atoms over integral data") {
    std::vector<bool> int_x{true};
    std::vector<bool> real_x{false};

    LinearAtom strict_pos;  // x > 0
    strict_pos.expr = LinearExpr(1);
    strict_pos.expr.coeffs[0] = 1;
    strict_pos.strict = true;

    Conjunction tightened = close_premise({strict_pos}, int_x);
    REQUIRE(tightened.size() == 1);
    CHECK_FALSE(tightened[0].strict);
    CHECK(tightened[0].expr.constant == Rational(-1));  // x - 1 >= 0

    Conjunction relaxed = close_premise({strict_pos}, real_x);
    REQUIRE(relaxed.size() == 1);
    CHECK_FALSE(relaxed[0].strict);
    CHECK(relaxed[0].expr.constant == Rational(0));  // x >= 0

    // Fractional coefficients block the integral cut even over integer vars.
    LinearAtom frac = strict_pos;
    frac.expr.coeffs[0] = Rational(1) / 2;
    Conjunction kept = close_premise({frac}, int_x);
    CHECK(kept[0].expr.constant == Rational(0));
}

TEST_CASE("premise closure folds constant atoms") {
    LinearAtom tautology;  // 5 >= 0
    tautology.expr = LinearExpr(1);
    tautology.expr.constant = 5;
    LinearAtom contradiction;  // -3 > 0
    contradiction.expr = LinearExpr(1);
    contradiction.expr.constant = -3;
    contradiction.strict = true;

    CHECK(close_premise({tautology}, {}).empty());
    Conjunction f = close_premise({contradiction}, {});
    REQUIRE(f.size() == 1);
    CHECK(f[0].expr.constant == Rational(-1));
    CHECK(f[0].expr.is_constant());
}
