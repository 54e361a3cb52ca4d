// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "eqrefute/interp.hpp"
#include "test_util.hpp"

using namespace eqrefute;
using namespace testutil;

namespace {

// Source-level and graph-level interpreters must agree draw for draw.
void check_agreement(const std::string& name, int seeds) {
    auto ast = parse_program(read_fixture(name));
    Pcfg pcfg = lower_to_pcfg(ast);
    auto issues = validate_pcfg(pcfg);
    CAPTURE(name);
    REQUIRE(issues.empty());
    CompiledPcfg compiled(pcfg);
    for (int seed = 1; seed <= seeds; ++seed) {
        RandomSource r1(seed), r2(seed);
        RunResult a = run_ast_program(*ast, r1, 1'000'000);
        RunResult b = run_to_termination(compiled, r2, 1'000'000);
        CAPTURE(seed);
        REQUIRE(a.terminated == b.terminated);
        if (!a.terminated) continue;
        REQUIRE(a.output.size() == b.output.size());
        for (size_t i = 0; i < a.output.size(); ++i)
            CHECK(a.output[i] == b.output[i]);
    }
}

}  // namespace

TEST_CASE("lowering preserves behaviour on every fixture") {
    const char* names[] = {
        "transmission_loop10_a.ppl", "transmission_loop10_b.ppl",
        "bounded_walk_a.ppl",        "bounded_walk_b.ppl",
        "geometric_trials_a.ppl",    "geometric_trials_b.ppl",
        "dice_sum_a.ppl",            "dice_sum_b.ppl",
        "uniform_race_a.ppl",        "uniform_race_b.ppl",
        "rare_event_count_a.ppl",    "rare_event_count_b.ppl",
        "mean_preserving_spread_a.ppl", "coupon_draws_a.ppl",
        "ost_bounded_updates_a.ppl", "ost_rsm_bounded_diff_a.ppl",
        "ost_rsm_normal_a.ppl",      "ost_fallback_a.ppl",
    };
    for (const char* n : names) check_agreement(n, 60);
}

TEST_CASE("leading constant assignments fold into the initial valuation") {
    Pcfg p = lower_fixture("transmission_a.ppl");
    REQUIRE(p.x_init.size() == 2);
    CHECK(p.x_init[0] == Rational(0));
    CHECK(p.x_init[1] == Rational(0));
    // l_init is the loop head; nothing re-runs the folded `:= 0` assignments.
    for (size_t ti : p.transitions_from(p.l_init)) {
        const Transition& t = p.transitions[ti];
        if (const auto* det = std::get_if<UpdateDet>(&t.update))
            CHECK_FALSE(det->expr.is_zero());
    }
}

TEST_CASE("terminal location carries a bare self loop") {
    Pcfg p = lower_fixture("bounded_walk_a.ppl");
    auto ts = p.transitions_from(p.l_out);
    REQUIRE(ts.size() == 1);
    const Transition& t = p.transitions[ts[0]];
    CHECK(t.guard.is_top());
    REQUIRE(t.successors.size() == 1);
    CHECK(t.successors[0].first == p.l_out);
    CHECK(std::holds_alternative<UpdateNone>(t.update));
}

TEST_CASE("integrality analysis marks discrete programs") {
    Pcfg a = lower_fixture("transmission_a.ppl");
    for (bool b : a.integer_valued) CHECK(b);
    Pcfg c = lower_fixture("uniform_race_a.ppl");
    // pos accumulates uniform(0, 2) draws and is not integral.
    size_t pos = 0;
    for (size_t i = 0; i < c.var_names.size(); ++i)
        if (c.var_names[i] == "pos") pos = i;
    CHECK_FALSE(c.integer_valued[pos]);
}

TEST_CASE("exactly one transition is enabled at every valuation") {
    // Guard totality and exclusivity across transitions of one location,
    // probed numerically on integer valuations.
    const char* names[] = {"transmission_a.ppl", "coupon_draws_a.ppl",
                           "geometric_trials_a.ppl"};
    for (const char* n : names) {
        CAPTURE(n);
        Pcfg p = lower_fixture(n);
        RandomSource rng(11);
        for (int trial = 0; trial < 2000; ++trial) {
            std::vector<Rational> x(p.num_vars());
            for (auto& v : x) v = Rational(static_cast<long>(rng.below(16)) - 3);
            for (size_t loc = 0; loc < p.num_locations(); ++loc) {
                int enabled = 0;
                for (size_t ti : p.transitions_from(loc))
                    if (p.transitions[ti].guard.holds(x)) ++enabled;
                CHECK(enabled == 1);
            }
        }
    }
}
