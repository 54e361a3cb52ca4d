// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "eqrefute/invariant.hpp"
#include "test_util.hpp"

using namespace eqrefute;
using namespace testutil;

TEST_CASE("well formed fixtures validate cleanly") {
    const char* names[] = {"transmission_a.ppl", "coupon_draws_a.ppl",
                           "ost_rsm_normal_a.ppl", "uniform_race_b.ppl"};
    for (const char* n : names) {
        CAPTURE(n);
        CHECK(validate_pcfg(lower_fixture(n)).empty());
    }
}

TEST_CASE("successor probabilities must sum to one") {
    Pcfg p = lower_fixture("transmission_a.ppl");
    for (auto& t : p.transitions)
        if (t.successors.size() == 2) t.successors[0].second -= Rational(1) / 100;
    CHECK_FALSE(validate_pcfg(p).empty());
}

TEST_CASE("overlapping guards are reported with a witness") {
    Pcfg p = lower_fixture("transmission_a.ppl");
    // Make the exit transition unconditional; it now overlaps the loop entry.
    for (auto& t : p.transitions)
        if (t.source == p.l_init && t.guard.cells.size() > 1)
            t.guard = LinearPredicate::top();
    auto issues = validate_pcfg(p);
    REQUIRE_FALSE(issues.empty());
    bool witnessed = false;
    for (const auto& i : issues)
        if (!i.witness.empty()) witnessed = true;
    CHECK(witnessed);
}

TEST_CASE("terminal location must keep its self loop") {
    Pcfg p = lower_fixture("bounded_walk_a.ppl");
    for (auto& t : p.transitions)
        if (t.source == p.l_out) t.successors[0].first = p.l_init;
    CHECK_FALSE(validate_pcfg(p).empty());
}

TEST_CASE("static run-length bound analysis") {
    // Counter loops with constant steps are recognized.
    CHECK(check_statically_bounded(lower_fixture("transmission_a.ppl")));
    CHECK(check_statically_bounded(lower_fixture("dice_sum_a.ppl")));
    CHECK(check_statically_bounded(lower_fixture("rare_event_count_a.ppl")));
    // Geometric loops and doubling walks have no deterministic bound.
    CHECK_FALSE(check_statically_bounded(lower_fixture("ost_bounded_updates_a.ppl")));
    CHECK_FALSE(check_statically_bounded(lower_fixture("ost_fallback_a.ppl")));
    CHECK_FALSE(check_statically_bounded(lower_fixture("ost_rsm_normal_a.ppl")));
}

TEST_CASE("bounded update analysis") {
    // Shifts by constants and bounded-support samples qualify.
    Pcfg p1 = lower_fixture("ost_bounded_updates_a.ppl");
    CHECK(check_bounded_updates(p1, generate_interval_invariants(p1)));
    // x := 2 * x is not a bounded update.
    Pcfg p2 = lower_fixture("ost_fallback_a.ppl");
    CHECK_FALSE(check_bounded_updates(p2, generate_interval_invariants(p2)));
    // Normal samples have unbounded support.
    Pcfg p3 = lower_fixture("ost_rsm_normal_a.ppl");
    CHECK_FALSE(check_bounded_updates(p3, generate_interval_invariants(p3)));
}

TEST_CASE("output compatibility requires same names and order") {
    Pcfg a = lower_fixture("transmission_a.ppl");
    Pcfg b = lower_fixture("transmission_b.ppl");
    CHECK_NOTHROW(check_output_compatibility(a, b));

    auto swapped = parse_program(
        "sent := 0\nfail := 0\n"
        "while sent <= 10 and fail <= 0 {\n"
        "  if prob(0.9) { sent := sent + 1 } else { fail := 1 }\n"
        "}\n"
        "return fail, sent\n");
    Pcfg c = lower_to_pcfg(swapped);
    CHECK_THROWS_AS(check_output_compatibility(a, c), ParseError);

    auto narrower = parse_program(
        "sent := 0\n"
        "while sent <= 10 {\n"
        "  if prob(0.9) { sent := sent + 1 }\n"
        "}\n"
        "return sent\n");
    Pcfg d = lower_to_pcfg(narrower);
    CHECK_THROWS_AS(check_output_compatibility(a, d), ParseError);
}

TEST_CASE("location labels follow source order") {
    Pcfg p = lower_fixture("transmission_a.ppl");
    REQUIRE(p.num_locations() == 6);
    CHECK(p.location_labels[p.l_init] == "l_init");
    CHECK(p.location_labels[p.l_out] == "l_out");
    CHECK(p.location_by_label("l_1").has_value());
    CHECK_FALSE(p.location_by_label("l_99").has_value());
    CHECK(p.out_var_names() == std::vector<std::string>{"sent", "fail"});
}
