// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "eqrefute/handelman.hpp"

using namespace eqrefute;

namespace {

LinearAtom atom(std::vector<Rational> coeffs, Rational c) {
    LinearAtom a;
    a.expr = LinearExpr(coeffs.size());
    a.expr.coeffs = std::move(coeffs);
    a.expr.constant = std::move(c);
    return a;
}

// x in [0, 1] as two atoms over one variable.
Conjunction unit_interval() {
    return {atom({Rational(1)}, Rational(0)), atom({Rational(-1)}, Rational(1))};
}

bool solved(LpStatus s) { return s == LpStatus::Optimal || s == LpStatus::Feasible; }

Entailment make_entailment(const std::string& key, Conjunction premise, size_t nvars,
                           TemplatePoly conclusion, unsigned D) {
    Entailment e;
    e.key = key;
    e.nvars = nvars;
    e.premise = std::move(premise);
    e.conclusion = std::move(conclusion);
    e.degree_bound = D;
    return e;
}

}  // namespace

TEST_CASE("product basis counts and order") {
    // Three distinct atoms at D = 2: 1, three singles, six pairs.
    Conjunction atoms{atom({Rational(1), Rational(0)}, Rational(0)),
                      atom({Rational(0), Rational(1)}, Rational(0)),
                      atom({Rational(-1), Rational(-1)}, Rational(2))};
    auto prods = handelman_products(atoms, 2, 2);
    CHECK(prods.size() == 10);
    // The empty product leads.
    CHECK(prods[0] == Polynomial::constant(2, Rational(1)));
    // Degree never exceeds the bound.
    for (const auto& p : prods) CHECK(p.total_degree() <= 2);

    CHECK(handelman_products(atoms, 2, 1).size() == 4);
    CHECK(handelman_products(atoms, 2, 3).size() == 20);
}

TEST_CASE("duplicate atoms are merged before expansion") {
    Conjunction twice{atom({Rational(1)}, Rational(0)), atom({Rational(1)}, Rational(0))};
    auto prods = handelman_products(twice, 1, 2);
    CHECK(prods.size() == 3);  // 1, x, x^2
}

TEST_CASE("product count explosion raises length_error") {
    Conjunction many;
    for (int i = 0; i < 14; ++i) {
        std::vector<Rational> cs(14, Rational(0));
        cs[i] = 1;
        many.push_back(atom(std::move(cs), Rational(i)));
    }
    CHECK_THROWS_AS(handelman_products(many, 14, 6), std::length_error);
}

TEST_CASE("nonnegativity of x - x^2 on the unit interval") {
    // x(1 - x) is itself a product atom at D = 2: lambda = 1 on that product.
    Polynomial x = Polynomial::variable(1, 0);
    Polynomial target = x - x * x;
    ConstraintSet cs;
    cs.entailments.push_back(make_entailment(
        "unit:concave", unit_interval(), 1, TemplatePoly::from_concrete(target), 2));
    LpSolution sol = solve_constraints(cs, Rational(1) / 1000000, Rational(1),
                                       Deadline::never());
    REQUIRE(solved(sol.status));
    const auto& lambdas = sol.multipliers.at("unit:concave");
    auto rep = exact_recheck(unit_interval(), 1, 2, target, lambdas);
    CHECK(rep.ok);
}

TEST_CASE("false entailments are infeasible at any admitted degree") {
    // {x + 2 >= 0} does not entail 1 + x >= 0 (take x = -2).
    Conjunction premise{atom({Rational(1)}, Rational(2))};
    Polynomial x = Polynomial::variable(1, 0);
    Polynomial target = x + Polynomial::constant(1, Rational(1));
    for (unsigned D = 1; D <= 4; ++D) {
        CAPTURE(D);
        ConstraintSet cs;
        cs.entailments.push_back(make_entailment(
            "shift", premise, 1, TemplatePoly::from_concrete(target), D));
        LpSolution sol =
            solve_constraints(cs, Rational(1) / 1000000, Rational(1), Deadline::never());
        CHECK(sol.status == LpStatus::Infeasible);
    }
}

TEST_CASE("adding the missing premise atom restores feasibility") {
    // {x + 2 >= 0, x >= 0} entails 1 + x >= 0 with lambda on 1 and x.
    Conjunction premise{atom({Rational(1)}, Rational(2)), atom({Rational(1)}, Rational(0))};
    Polynomial x = Polynomial::variable(1, 0);
    Polynomial target = x + Polynomial::constant(1, Rational(1));
    ConstraintSet cs;
    cs.entailments.push_back(make_entailment(
        "shift:fixed", premise, 1, TemplatePoly::from_concrete(target), 1));
    LpSolution sol =
        solve_constraints(cs, Rational(1) / 1000000, Rational(1), Deadline::never());
    REQUIRE(solved(sol.status));
    auto rep = exact_recheck(premise, 1, 1, target, sol.multipliers.at("shift:fixed"));
    CHECK(rep.ok);
}

TEST_CASE("raising the product degree only helps") {
    // (1 - x)(1 + x) = 1 - x^2 needs degree-2 products over x in [-1, 1].
    Conjunction box{atom({Rational(1)}, Rational(1)), atom({Rational(-1)}, Rational(1))};
    Polynomial x = Polynomial::variable(1, 0);
    Polynomial target = Polynomial::constant(1, Rational(1)) - x * x;
    for (unsigned D = 1; D <= 3; ++D) {
        CAPTURE(D);
        ConstraintSet cs;
        cs.entailments.push_back(
            make_entailment("band", box, 1, TemplatePoly::from_concrete(target), D));
        LpSolution sol =
            solve_constraints(cs, Rational(1) / 1000000, Rational(1), Deadline::never());
        if (D == 1) {
            CHECK(sol.status == LpStatus::Infeasible);
        } else {
            REQUIRE(solved(sol.status));
            CHECK(exact_recheck(box, 1, D, target, sol.multipliers.at("band")).ok);
        }
    }
}

TEST_CASE("template synthesis under an entailment") {
    // Find u with {x in [0,1]} => u * x >= 0 and u >= 2: u = 2 works.
    TemplateSpace space;
    int u = space.fresh("u");
    TemplatePoly conclusion(1);
    Monomial mx(1);
    mx.exps[0] = 1;
    conclusion.add_term(mx, AffineForm::var(u));
    ConstraintSet cs;
    cs.space = space;
    cs.entailments.push_back(make_entailment("scaled", unit_interval(), 1, conclusion, 1));
    Relational lb;
    lb.key = "u:lb";
    lb.expr = AffineForm::var(u) - AffineForm(Rational(2));
    cs.relationals.push_back(lb);
    LpSolution sol =
        solve_constraints(cs, Rational(1) / 1000000, Rational(1), Deadline::never());
    REQUIRE(solved(sol.status));
    CHECK(sol.assignment[u] >= Rational(2));
}

TEST_CASE("strict relationals share the positive slack") {
    // t > 0 and -t > -1/2 force gamma <= t <= 1/2 - gamma.
    TemplateSpace space;
    int t = space.fresh("t");
    ConstraintSet cs;
    cs.space = space;
    Relational pos{"t:pos", AffineForm::var(t), true};
    Relational cap{"t:cap", AffineForm(Rational(1) / 2) - AffineForm::var(t), true};
    cs.relationals.push_back(pos);
    cs.relationals.push_back(cap);
    Rational gmin = Rational(1) / 8;
    LpSolution sol = solve_constraints(cs, gmin, Rational(1), Deadline::never());
    REQUIRE(solved(sol.status));
    CHECK(sol.gamma >= gmin);
    CHECK(sol.assignment[t] >= sol.gamma);
    CHECK(Rational(1) / 2 - sol.assignment[t] >= sol.gamma);
}

TEST_CASE("objective maximization reports the optimum") {
    // max t subject to t <= 5/3 (as relational 5/3 - t >= 0).
    TemplateSpace space;
    int t = space.fresh("t");
    ConstraintSet cs;
    cs.space = space;
    cs.objective = t;
    Relational cap{"t:cap", AffineForm(Rational(5) / 3) - AffineForm::var(t), false};
    cs.relationals.push_back(cap);
    LpSolution sol =
        solve_constraints(cs, Rational(1) / 1000000, Rational(1), Deadline::never());
    REQUIRE(sol.status == LpStatus::Optimal);
    CHECK(sol.assignment[t] == Rational(5) / 3);
    CHECK(sol.objective == Rational(5) / 3);
}

TEST_CASE("unbounded maximization degrades to a clamped feasible answer") {
    TemplateSpace space;
    int t = space.fresh("t");
    ConstraintSet cs;
    cs.space = space;
    cs.objective = t;
    Relational lb{"t:lb", AffineForm::var(t), false};
    cs.relationals.push_back(lb);
    LpSolution sol =
        solve_constraints(cs, Rational(1) / 1000000, Rational(1), Deadline::never());
    CHECK(sol.status == LpStatus::Feasible);
    CHECK(sol.assignment[t] >= Rational(0));
}

TEST_CASE("recheck rejects tampered multipliers") {
    Polynomial x = Polynomial::variable(1, 0);
    Polynomial target = x - x * x;
    ConstraintSet cs;
    cs.entailments.push_back(make_entailment(
        "unit:concave", unit_interval(), 1, TemplatePoly::from_concrete(target), 2));
    LpSolution sol =
        solve_constraints(cs, Rational(1) / 1000000, Rational(1), Deadline::never());
    REQUIRE(solved(sol.status));
    auto lambdas = sol.multipliers.at("unit:concave");
    REQUIRE_FALSE(lambdas.empty());
    lambdas[0] += 1;  // breaks the coefficient identity
    CHECK_FALSE(exact_recheck(unit_interval(), 1, 2, target, lambdas).ok);
    lambdas[0] -= 2;  // now a negative multiplier
    CHECK_FALSE(exact_recheck(unit_interval(), 1, 2, target, lambdas).ok);
    // Wrong arity is rejected rather than read out of bounds.
    CHECK_FALSE(exact_recheck(unit_interval(), 1, 2, target, {Rational(1)}).ok);
}
