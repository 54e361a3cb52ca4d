// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "eqrefute/simplex.hpp"

using namespace eqrefute;

namespace {

SimplexRow row(std::vector<std::pair<int, Rational>> terms, RowOp op, Rational rhs) {
    SimplexRow r;
    r.terms = std::move(terms);
    r.op = op;
    r.rhs = std::move(rhs);
    return r;
}

}  // namespace

TEST_CASE("textbook maximum at a vertex") {
    // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18, x,y >= 0.
    SimplexProblem p;
    p.maximize = true;
    int x = p.add_var(true, 3), y = p.add_var(true, 5);
    p.rows.push_back(row({{x, 1}}, RowOp::Le, 4));
    p.rows.push_back(row({{y, 2}}, RowOp::Le, 12));
    p.rows.push_back(row({{x, 3}, {y, 2}}, RowOp::Le, 18));
    auto r = solve_simplex(p);
    REQUIRE(r.status == SimplexStatus::Optimal);
    CHECK(r.objective_value == Rational(36));
    CHECK(r.point[x] == Rational(2));
    CHECK(r.point[y] == Rational(6));
}

TEST_CASE("minimization with Ge rows") {
    // min 2x + 3y s.t. x + y >= 4, x + 3y >= 6, x,y >= 0. Optimum at (3, 1).
    SimplexProblem p;
    int x = p.add_var(true, 2), y = p.add_var(true, 3);
    p.rows.push_back(row({{x, 1}, {y, 1}}, RowOp::Ge, 4));
    p.rows.push_back(row({{x, 1}, {y, 3}}, RowOp::Ge, 6));
    auto r = solve_simplex(p);
    REQUIRE(r.status == SimplexStatus::Optimal);
    CHECK(r.objective_value == Rational(9));
    CHECK(r.point[x] == Rational(3));
    CHECK(r.point[y] == Rational(1));
}

TEST_CASE("free variables reach negative optima") {
    // min x s.t. x >= -7 with x free.
    SimplexProblem p;
    int x = p.add_var(false, 1);
    p.rows.push_back(row({{x, 1}}, RowOp::Ge, -7));
    auto r = solve_simplex(p);
    REQUIRE(r.status == SimplexStatus::Optimal);
    CHECK(r.point[x] == Rational(-7));
}

TEST_CASE("equality rows bind exactly") {
    // max x + y s.t. x + y = 5, x - y = 1.
    SimplexProblem p;
    p.maximize = true;
    int x = p.add_var(true, 1), y = p.add_var(true, 1);
    p.rows.push_back(row({{x, 1}, {y, 1}}, RowOp::Eq, 5));
    p.rows.push_back(row({{x, 1}, {y, -1}}, RowOp::Eq, 1));
    auto r = solve_simplex(p);
    REQUIRE(r.status == SimplexStatus::Optimal);
    CHECK(r.point[x] == Rational(3));
    CHECK(r.point[y] == Rational(2));
}

TEST_CASE("infeasibility is detected in phase one") {
    SimplexProblem p;
    int x = p.add_var(true, 1);
    p.rows.push_back(row({{x, 1}}, RowOp::Le, 1));
    p.rows.push_back(row({{x, 1}}, RowOp::Ge, 2));
    CHECK(solve_simplex(p).status == SimplexStatus::Infeasible);
}

TEST_CASE("unboundedness is detected in phase two") {
    SimplexProblem p;
    p.maximize = true;
    int x = p.add_var(true, 1);
    p.rows.push_back(row({{x, 1}}, RowOp::Ge, 0));
    CHECK(solve_simplex(p).status == SimplexStatus::Unbounded);
}

TEST_CASE("exact rational pivots avoid drift") {
    // max y s.t. 3y <= 1, 7y <= 2. Optimum exactly 2/7 < 1/3.
    SimplexProblem p;
    p.maximize = true;
    int y = p.add_var(true, 1);
    p.rows.push_back(row({{y, 3}}, RowOp::Le, 1));
    p.rows.push_back(row({{y, 7}}, RowOp::Le, 2));
    auto r = solve_simplex(p);
    REQUIRE(r.status == SimplexStatus::Optimal);
    CHECK(r.point[y] == Rational(2) / 7);
}

TEST_CASE("degenerate cycling guard terminates") {
    // Beale's cycling example for Dantzig pricing; the Bland switch must end it.
    SimplexProblem p;
    p.maximize = true;
    int x1 = p.add_var(true, Rational(3) / 4);
    int x2 = p.add_var(true, -150);
    int x3 = p.add_var(true, Rational(1) / 50);
    int x4 = p.add_var(true, -6);
    p.rows.push_back(row({{x1, Rational(1) / 4}, {x2, -60}, {x3, Rational(-1) / 25}, {x4, 9}},
                         RowOp::Le, 0));
    p.rows.push_back(row({{x1, Rational(1) / 2}, {x2, -90}, {x3, Rational(-1) / 50}, {x4, 3}},
                         RowOp::Le, 0));
    p.rows.push_back(row({{x3, 1}}, RowOp::Le, 1));
    auto r = solve_simplex(p);
    REQUIRE(r.status == SimplexStatus::Optimal);
    CHECK(r.objective_value == Rational(1) / 20);
}

TEST_CASE("expired deadline reports timeout") {
    SimplexProblem p;
    p.maximize = true;
    int x = p.add_var(true, 1);
    p.rows.push_back(row({{x, 1}}, RowOp::Le, 1));
    auto r = solve_simplex(p, Deadline::in_seconds(-1));
    CHECK(r.status == SimplexStatus::Timeout);
}
