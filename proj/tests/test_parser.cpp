// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "test_util.hpp"

using namespace eqrefute;
using namespace testutil;

TEST_CASE("all shipped fixtures parse") {
    const char* names[] = {
        "transmission_a.ppl",     "transmission_b.ppl",
        "transmission_loop10_a.ppl", "transmission_loop10_b.ppl",
        "bounded_walk_a.ppl",     "bounded_walk_b.ppl",
        "geometric_trials_a.ppl", "geometric_trials_b.ppl",
        "dice_sum_a.ppl",         "dice_sum_b.ppl",
        "uniform_race_a.ppl",     "uniform_race_b.ppl",
        "rare_event_count_a.ppl", "rare_event_count_b.ppl",
        "mean_preserving_spread_a.ppl", "mean_preserving_spread_b.ppl",
        "coupon_draws_a.ppl",     "coupon_draws_b.ppl",
        "ost_bounded_updates_a.ppl", "ost_bounded_updates_b.ppl",
        "ost_rsm_bounded_diff_a.ppl", "ost_rsm_bounded_diff_b.ppl",
        "ost_rsm_normal_a.ppl",   "ost_rsm_normal_b.ppl",
        "ost_fallback_a.ppl",     "ost_fallback_b.ppl",
    };
    for (const char* n : names) {
        CAPTURE(n);
        CHECK_NOTHROW(parse_program(read_fixture(n)));
    }
}

TEST_CASE("structure of the retransmission program") {
    auto p = parse_program(read_fixture("transmission_a.ppl"));
    REQUIRE(p->vars.size() == 2);
    CHECK(p->vars[0] == "sent");
    CHECK(p->vars[1] == "fail");
    // Both leading constant assignments fold into x_init.
    CHECK(leading_constant_prefix(*p) == 2);
    CHECK(p->x_init() == std::vector<Rational>{Rational(0), Rational(0)});
    REQUIRE(p->return_vars.size() == 2);

    // Statement list: two folded assigns, the loop, the return.
    REQUIRE(p->stmts.size() == 4);
    const Stmt& loop = p->stmts[2];
    REQUIRE(loop.kind == StmtKind::While);
    REQUIRE(loop.pred.cells.size() == 1);
    CHECK(loop.pred.cells[0].size() == 2);  // sent <= 8000000 and fail <= 0
    REQUIRE(loop.body.size() == 1);
    CHECK(loop.body[0].kind == StmtKind::IfProb);
    CHECK(loop.body[0].prob == Rational(999) / 1000);
}

TEST_CASE("sampling statement carries the distribution") {
    auto p = parse_program(
        "x := 0\n"
        "x := sample(uniformint(1, 6))\n"
        "return x\n");
    REQUIRE(p->stmts.size() == 3);
    const Stmt& s = p->stmts[1];
    REQUIRE(s.kind == StmtKind::Sample);
    CHECK(s.dist.kind == DistKind::UniformInt);
}

TEST_CASE("or-guards lower to multiple DNF cells") {
    auto p = parse_program(read_fixture("coupon_draws_a.ppl"));
    const Stmt* loop = nullptr;
    for (const auto& s : p->stmts)
        if (s.kind == StmtKind::While) loop = &s;
    REQUIRE(loop != nullptr);
    // draws <= 9 and (have1 <= 0 or have2 <= 0): two cells.
    CHECK(loop->pred.cells.size() == 2);
}

TEST_CASE("if without else and discrete distributions") {
    auto p = parse_program(
        "x := 0\n"
        "if prob(0.25) { x := x + 1 }\n"
        "y := sample(discrete(0: 0.5, 2: 0.5))\n"
        "return y\n");
    CHECK(p->stmts[1].else_branch.empty());
    const Stmt& d = p->stmts[2];
    REQUIRE(d.kind == StmtKind::Sample);
    CHECK(d.dist.kind == DistKind::Discrete);
    REQUIRE(d.dist.entries.size() == 2);
    CHECK(d.dist.entries[0].second == Rational(1) / 2);
}

TEST_CASE("parse errors carry positions") {
    CHECK_THROWS_AS(parse_program("x := y + 1\nreturn x\n"), ParseError);
    CHECK_THROWS_AS(parse_program("x := 0\nif prob(1.5) { x := 1 }\nreturn x\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_program("x := 0\n"), ParseError);  // no return
    CHECK_THROWS_AS(parse_program("x := 0\nwhile x * x <= 4 { x := x + 1 }\nreturn x\n"),
                    ParseError);  // nonlinear guard atom
    try {
        parse_program("x := 0\nz := w\nreturn x\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("w") != std::string::npos);
    }
}

TEST_CASE("pretty_print reparses to a fixed point") {
    const char* names[] = {"transmission_a.ppl", "coupon_draws_a.ppl",
                           "uniform_race_a.ppl", "dice_sum_a.ppl",
                           "ost_rsm_normal_a.ppl"};
    for (const char* n : names) {
        CAPTURE(n);
        auto p1 = parse_program(read_fixture(n));
        std::string s1 = pretty_print(*p1);
        auto p2 = parse_program(s1);
        CHECK(pretty_print(*p2) == s1);
    }
}
