// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include <filesystem>
#include <fstream>

#include "eqrefute/pipeline.hpp"
#include "test_util.hpp"

using namespace eqrefute;
using namespace testutil;

namespace {

RunConfig base(const std::string& a, const std::string& b) {
    RunConfig cfg;
    cfg.program_a = fixture_path(a);
    cfg.program_b = fixture_path(b);
    cfg.out_path.clear();
    return cfg;
}

bool has_diag(const RunOutcome& out, const std::string& needle) {
    for (const auto& d : out.diagnostics)
        if (d.find(needle) != std::string::npos) return true;
    return false;
}

}  // namespace

TEST_CASE("equivalence refutation with fixed epsilon reporting") {
    RunConfig cfg = base("geometric_trials_a.ppl", "geometric_trials_b.ppl");
    RunOutcome out = run_pipeline(cfg);
    CHECK(out.exit_code == 0);
    CHECK(out.verdict == "refuted");
    CHECK(out.degree == 1);
    REQUIRE(out.certificate.has_value());
    CHECK((*out.certificate)["mode"] == "equivalence");
    std::string line = verdict_line(out, cfg);
    CHECK(line.rfind("VERDICT refuted mode=equivalence epsilon=- degree=1", 0) == 0);
}

TEST_CASE("similarity with a fixed epsilon keeps it in the verdict") {
    RunConfig cfg = base("transmission_loop10_a.ppl", "transmission_loop10_b.ppl");
    cfg.mode = "similarity";
    cfg.metric = "l1";
    cfg.epsilon = Rational(1) / 10;
    RunOutcome out = run_pipeline(cfg);
    CHECK(out.exit_code == 0);
    CHECK(out.epsilon.value() == Rational(1) / 10);
    CHECK((*out.certificate)["meta"]["epsilon_mode"] == "fixed");
    CHECK(verdict_line(out, cfg).find("epsilon=1/10") != std::string::npos);
}

TEST_CASE("maximized similarity reports the exact optimum") {
    RunConfig cfg = base("transmission_loop10_a.ppl", "transmission_loop10_b.ppl");
    cfg.mode = "similarity";
    cfg.metric = "l1";
    cfg.maximize = true;
    RunOutcome out = run_pipeline(cfg);
    CHECK(out.exit_code == 0);
    CHECK(out.epsilon.value() == Rational(11) / 27);
    CHECK((*out.certificate)["meta"]["epsilon_mode"] == "maximize");
}

TEST_CASE("metric choice changes the certified gap") {
    RunConfig cfg = base("transmission_loop10_a.ppl", "transmission_loop10_b.ppl");
    cfg.mode = "similarity";
    cfg.maximize = true;

    cfg.metric = "uniform";
    CHECK(run_pipeline(cfg).epsilon.value() == Rational(11) / 30);
    cfg.metric = "discrete";
    CHECK(run_pipeline(cfg).epsilon.value() == Rational(11) / 60);
}

TEST_CASE("the l2 metric caps the template degree") {
    RunConfig cfg = base("transmission_loop10_a.ppl", "transmission_loop10_b.ppl");
    cfg.mode = "similarity";
    cfg.metric = "l2";
    cfg.maximize = true;
    RunOutcome out = run_pipeline(cfg);
    CHECK(out.exit_code == 0);
    CHECK(out.epsilon.value() == Rational(11) / 30);
    CHECK(out.degree == 1);
    CHECK(has_diag(out, "caps the template degree at 1"));
}

TEST_CASE("a program is never refuted against itself") {
    const char* names[] = {"transmission_loop10_a.ppl", "bounded_walk_a.ppl",
                           "dice_sum_a.ppl"};
    for (const char* n : names) {
        CAPTURE(n);
        RunConfig cfg = base(n, n);
        cfg.degree_max = 2;
        RunOutcome out = run_pipeline(cfg);
        CHECK(out.exit_code == kExitUnknown);
        CHECK(out.verdict == "unknown");
        CHECK_FALSE(out.certificate.has_value());
        CHECK(has_diag(out, "no refutation found up to degree"));
    }
}

TEST_CASE("certificates are deterministic apart from timestamps") {
    RunConfig cfg = base("transmission_loop10_a.ppl", "transmission_loop10_b.ppl");
    cfg.mode = "similarity";
    cfg.metric = "l1";
    cfg.maximize = true;
    RunOutcome o1 = run_pipeline(cfg);
    RunOutcome o2 = run_pipeline(cfg);
    REQUIRE(o1.certificate.has_value());
    REQUIRE(o2.certificate.has_value());
    nlohmann::ordered_json a = *o1.certificate, b = *o2.certificate;
    a["meta"].erase("created");
    a["meta"].erase("time_ms");
    b["meta"].erase("created");
    b["meta"].erase("time_ms");
    CHECK(a == b);
}

TEST_CASE("precondition failures exit with code 11") {
    SUBCASE("missing input file") {
        RunConfig cfg = base("transmission_loop10_a.ppl", "no_such_file.ppl");
        RunOutcome out = run_pipeline(cfg);
        CHECK(out.exit_code == kExitPrecondition);
    }
    SUBCASE("unknown mode") {
        RunConfig cfg = base("transmission_loop10_a.ppl", "transmission_loop10_b.ppl");
        cfg.mode = "distance";
        CHECK(run_pipeline(cfg).exit_code == kExitPrecondition);
    }
    SUBCASE("similarity needs exactly one of epsilon and maximize") {
        RunConfig cfg = base("transmission_loop10_a.ppl", "transmission_loop10_b.ppl");
        cfg.mode = "similarity";
        CHECK(run_pipeline(cfg).exit_code == kExitPrecondition);
        cfg.epsilon = Rational(1);
        cfg.maximize = true;
        CHECK(run_pipeline(cfg).exit_code == kExitPrecondition);
    }
    SUBCASE("incompatible outputs") {
        RunConfig cfg = base("transmission_loop10_a.ppl", "bounded_walk_a.ppl");
        CHECK(run_pipeline(cfg).exit_code == kExitPrecondition);
    }
    SUBCASE("parse error in an input") {
        RunConfig cfg = base("transmission_loop10_a.ppl", "transmission_loop10_b.ppl");
        cfg.source_b = "x := ;\nreturn x\n";
        CHECK(run_pipeline(cfg).exit_code == kExitPrecondition);
    }
    SUBCASE("Lp similarity on an unbounded output range") {
        RunConfig cfg = base("ost_bounded_updates_a.ppl", "ost_bounded_updates_b.ppl");
        cfg.mode = "similarity";
        cfg.metric = "l1";
        cfg.maximize = true;
        RunOutcome out = run_pipeline(cfg);
        CHECK(out.exit_code == kExitPrecondition);
        CHECK(has_diag(out, "output range unbounded at the terminal location"));
    }
}

TEST_CASE("discrete similarity skips the bounded-output precondition") {
    // A polynomial f over the unbounded output still cannot satisfy the
    // discrete Lipschitz bound unless constant, so the LP stays infeasible;
    // the point here is that the run reaches synthesis instead of exiting 11.
    RunConfig cfg = base("ost_bounded_updates_a.ppl", "ost_bounded_updates_b.ppl");
    cfg.mode = "similarity";
    cfg.metric = "discrete";
    cfg.maximize = true;
    cfg.degree_max = 1;
    RunOutcome out = run_pipeline(cfg);
    CHECK(out.exit_code == kExitUnknown);
    CHECK_FALSE(has_diag(out, "output range unbounded"));
}

TEST_CASE("expired budget exits with code 12") {
    RunConfig cfg = base("transmission_a.ppl", "transmission_b.ppl");
    cfg.timeout_seconds = 1e-6;
    RunOutcome out = run_pipeline(cfg);
    CHECK(out.exit_code == kExitTimeout);
    CHECK(out.verdict == "unknown");
}

TEST_CASE("inline sources take precedence over paths") {
    RunConfig cfg = base("transmission_loop10_a.ppl", "transmission_loop10_a.ppl");
    cfg.source_b = read_fixture("transmission_loop10_b.ppl");
    RunOutcome out = run_pipeline(cfg);
    CHECK(out.exit_code == 0);  // the b side differs, so refutation succeeds
}

TEST_CASE("emitted invariants can be fed back as files") {
    namespace fs = std::filesystem;
    RunConfig cfg = base("transmission_loop10_a.ppl", "transmission_loop10_b.ppl");
    cfg.mode = "similarity";
    cfg.metric = "l1";
    cfg.maximize = true;
    RunOutcome first = run_pipeline(cfg);
    REQUIRE(first.exit_code == 0);
    std::string inv1 = (*first.certificate)["invariants"]["program_a"]["text"];
    std::string inv2 = (*first.certificate)["invariants"]["program_b"]["text"];
    std::string f1 = "/tmp/eqrefute_test_inv1.txt", f2 = "/tmp/eqrefute_test_inv2.txt";
    {
        std::ofstream o1(f1), o2(f2);
        o1 << inv1;
        o2 << inv2;
    }
    cfg.invariants_a = f1;
    cfg.invariants_b = f2;
    RunOutcome second = run_pipeline(cfg);
    CHECK(second.exit_code == 0);
    CHECK(second.epsilon.value() == first.epsilon.value());
    CHECK((*second.certificate)["invariants"]["program_a"]["origin"] == "file");
    fs::remove(f1);
    fs::remove(f2);
}

TEST_CASE("a wrong user invariant is rejected before synthesis") {
    RunConfig cfg = base("transmission_loop10_a.ppl", "transmission_loop10_b.ppl");
    std::string f1 = "/tmp/eqrefute_test_badinv.txt";
    {
        std::ofstream o(f1);
        o << "loc l_init: 5 - 1*sent >= 0\n";  // sent reaches 11
    }
    cfg.invariants_a = f1;
    RunOutcome out = run_pipeline(cfg);
    CHECK(out.exit_code == kExitPrecondition);
    std::filesystem::remove(f1);
}

TEST_CASE("certificate files land at the requested path") {
    RunConfig cfg = base("geometric_trials_a.ppl", "geometric_trials_b.ppl");
    cfg.out_path = "/tmp/eqrefute_test_cert.json";
    cfg.emit_lp_path = "/tmp/eqrefute_test_lp.txt";
    RunOutcome out = run_pipeline(cfg);
    REQUIRE(out.exit_code == 0);
    std::ifstream in(cfg.out_path);
    REQUIRE(in.good());
    nlohmann::json j = nlohmann::json::parse(in);
    CHECK(j["meta"]["tool"] == "eqrefute");
    CHECK(std::filesystem::file_size(cfg.emit_lp_path) > 0);
    std::filesystem::remove(cfg.out_path);
    std::filesystem::remove(cfg.emit_lp_path);
}
