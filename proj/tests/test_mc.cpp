// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "eqrefute/mc.hpp"
#include "eqrefute/pipeline.hpp"
#include "test_util.hpp"

using namespace eqrefute;
using namespace testutil;

TEST_CASE("deterministic programs are estimated exactly") {
    Pcfg p = lower_source(
        "x := 0\n"
        "while x <= 9 { x := x + 1 }\n"
        "return x\n");
    Polynomial f = Polynomial::variable(1, 0);
    McEstimate e = mc_expectation(p, f, 1000, 7);
    CHECK(e.samples == 1000);
    CHECK(e.censored == 0);
    CHECK(e.mean == 10.0);
    CHECK(e.interval == "clt");
    CHECK_FALSE(e.inconclusive());
}

TEST_CASE("estimates converge to the exact mean") {
    // Fair die sum of 10 rolls: mean 35.
    Pcfg p = lower_fixture("dice_sum_a.ppl");
    Polynomial f = Polynomial::variable(1, 0);  // over the single output
    McEstimate e = mc_expectation(p, f, 20000, 11);
    CHECK(std::abs(e.mean - 35.0) < 4 * std::sqrt(10 * 35.0 / 12 / 20000));
    CHECK(e.half_width > 0);
}

TEST_CASE("a known range switches the interval to Hoeffding") {
    Pcfg p = lower_fixture("bounded_walk_a.ppl");
    Polynomial f = Polynomial::variable(1, 0);
    size_t n = 10000;
    McEstimate h = mc_expectation(p, f, n, 3, 50'000'000, std::make_pair(0.0, 10.0));
    CHECK(h.interval == "hoeffding");
    // Width matches the closed form for a 99% two-sided bound.
    double expect = 10.0 * std::sqrt(std::log(200.0) / (2.0 * n));
    CHECK(h.half_width == doctest::Approx(expect).epsilon(1e-12));

    McEstimate c = mc_expectation(p, f, n, 3);
    CHECK(c.interval == "clt");
    // The walk's variance is far below the worst case, so CLT is tighter.
    CHECK(c.half_width < h.half_width);
}

TEST_CASE("seeds make estimation reproducible and workers only partition it") {
    Pcfg p = lower_fixture("geometric_trials_a.ppl");
    Polynomial f = Polynomial::variable(1, 0);
    McEstimate a = mc_expectation(p, f, 5000, 21, 50'000'000, std::nullopt, 1);
    McEstimate b = mc_expectation(p, f, 5000, 21, 50'000'000, std::nullopt, 1);
    CHECK(a.mean == b.mean);
    McEstimate d4 = mc_expectation(p, f, 5000, 21, 50'000'000, std::nullopt, 4);
    // Different partitioning, same distribution: means agree within intervals.
    CHECK(std::abs(a.mean - d4.mean) <= a.half_width + d4.half_width);
}

TEST_CASE("censored runs make the estimate inconclusive") {
    // The loop retains probability ~1/2 of running past any budget.
    Pcfg p = lower_source(
        "x := 0\n"
        "alive := 1\n"
        "while alive >= 1 {\n"
        "  if prob(0.001) { alive := 0 } else { x := x + 1 }\n"
        "}\n"
        "return x\n");
    Polynomial f = Polynomial::variable(1, 0);
    McEstimate e = mc_expectation(p, f, 1000, 5, 50);
    CHECK(e.censored > 0);
    CHECK(e.inconclusive());
}

TEST_CASE("output range from the terminal invariant") {
    Pcfg p = lower_fixture("transmission_loop10_a.ppl");
    Invariant inv = generate_interval_invariants(p);
    // f = sent - fail over the program universe.
    Polynomial f = Polynomial::variable(2, 0) - Polynomial::variable(2, 1);
    auto r = output_range(f, p, inv);
    REQUIRE(r.has_value());
    CHECK(r->first == Rational(-1));
    CHECK(r->second == Rational(11));

    Pcfg q = lower_fixture("ost_bounded_updates_a.ppl");
    Invariant qinv = generate_interval_invariants(q);
    Polynomial g = Polynomial::variable(1, 0);
    CHECK_FALSE(output_range(g, q, qinv).has_value());
}

TEST_CASE("certificate cross-check accepts a sound certificate") {
    RunConfig cfg;
    cfg.program_a = fixture_path("transmission_loop10_a.ppl");
    cfg.program_b = fixture_path("transmission_loop10_b.ppl");
    cfg.mode = "similarity";
    cfg.metric = "l1";
    cfg.maximize = true;
    cfg.out_path.clear();
    RunOutcome out = run_pipeline(cfg);
    REQUIRE(out.exit_code == 0);
    Certificate cert = certificate_from_json(*out.certificate);
    Pcfg p1 = lower_fixture("transmission_loop10_a.ppl");
    Pcfg p2 = lower_fixture("transmission_loop10_b.ppl");
    McReport rep = mc_consistency(cert, p1, p2, 20000, 9);
    CHECK(rep.verdict == McVerdict::Consistent);
    CHECK(rep.u_bound >= rep.e1.mean - rep.e1.half_width);
    CHECK(rep.l_bound <= rep.e2.mean + rep.e2.half_width);
}

TEST_CASE("certificate cross-check flags an impossible bound") {
    RunConfig cfg;
    cfg.program_a = fixture_path("transmission_loop10_a.ppl");
    cfg.program_b = fixture_path("transmission_loop10_b.ppl");
    cfg.mode = "similarity";
    cfg.metric = "l1";
    cfg.maximize = true;
    cfg.out_path.clear();
    RunOutcome out = run_pipeline(cfg);
    REQUIRE(out.exit_code == 0);
    Certificate cert = certificate_from_json(*out.certificate);
    // Claim a gap far beyond the true distance.
    cert.epsilon = Rational(1000);
    Pcfg p1 = lower_fixture("transmission_loop10_a.ppl");
    Pcfg p2 = lower_fixture("transmission_loop10_b.ppl");
    McReport rep = mc_consistency(cert, p1, p2, 20000, 9);
    CHECK(rep.verdict == McVerdict::Inconsistent);
    CHECK_FALSE(rep.notes.empty());
}
