// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "eqrefute/certificate.hpp"
#include "eqrefute/pipeline.hpp"
#include "test_util.hpp"

using namespace eqrefute;
using namespace testutil;

namespace {

nlohmann::json fresh_certificate(const std::string& a, const std::string& b,
                                 const std::string& mode, bool maximize) {
    RunConfig cfg;
    cfg.program_a = fixture_path(a);
    cfg.program_b = fixture_path(b);
    cfg.mode = mode;
    if (mode == "similarity") {
        cfg.metric = "l1";
        if (maximize)
            cfg.maximize = true;
        else
            cfg.epsilon = Rational(1) / 10;
    }
    cfg.verify = "exact";
    cfg.out_path.clear();
    RunOutcome out = run_pipeline(cfg);
    REQUIRE(out.exit_code == 0);
    REQUIRE(out.certificate.has_value());
    return *out.certificate;
}

}  // namespace

TEST_CASE("encode and decode round trip") {
    nlohmann::json j = fresh_certificate("transmission_loop10_a.ppl",
                                         "transmission_loop10_b.ppl", "similarity", true);
    Certificate c = certificate_from_json(j);
    nlohmann::json j2 = certificate_to_json(c);
    CHECK(j == j2);

    CHECK(c.mode == "similarity");
    CHECK(c.epsilon.value() == Rational(11) / 27);
    CHECK(c.degree_d == 1);
    CHECK(c.out_names == std::vector<std::string>{"sent", "fail"});
    CHECK_FALSE(c.multipliers.empty());
    CHECK(c.inv1_origin == "intervals");
    CHECK_FALSE(c.created.empty());
}

TEST_CASE("fresh certificates verify") {
    nlohmann::json j = fresh_certificate("transmission_loop10_a.ppl",
                                         "transmission_loop10_b.ppl", "similarity", true);
    VerifyReport rep = verify_certificate(j);
    CHECK(rep.ok);
    CHECK(rep.errors.empty());
    CHECK(rep.entailments_checked > 0);
    CHECK(rep.relationals_checked > 0);

    nlohmann::json je = fresh_certificate("geometric_trials_a.ppl",
                                          "geometric_trials_b.ppl", "equivalence", false);
    CHECK(verify_certificate(je).ok);
}

TEST_CASE("decoding rejects malformed documents") {
    nlohmann::json j = fresh_certificate("transmission_loop10_a.ppl",
                                         "transmission_loop10_b.ppl", "similarity", true);
    nlohmann::json missing = j;
    missing.erase("uesm");
    CHECK_THROWS_AS(certificate_from_json(missing), CertificateError);

    nlohmann::json bad_rat = j;
    bad_rat["epsilon"] = "11//27";
    CHECK_THROWS_AS(certificate_from_json(bad_rat), CertificateError);

    nlohmann::json bad_var = j;
    // A monomial over a variable the program lacks.
    bad_var["uesm"]["l_init"] = nlohmann::json::array(
        {nlohmann::json{{"m", {{"quux", 1}}}, {"c", "3"}}});
    CHECK_THROWS_AS(certificate_from_json(bad_var), CertificateError);

    nlohmann::json bad_mode = j;
    bad_mode["mode"] = "refutation";
    CHECK_THROWS_AS(certificate_from_json(bad_mode), CertificateError);
}

TEST_CASE("single field tampers are caught by verification") {
    nlohmann::json j = fresh_certificate("transmission_loop10_a.ppl",
                                         "transmission_loop10_b.ppl", "similarity", true);

    SUBCASE("epsilon raised past the certified gap") {
        j["epsilon"] = rational_to_string(Rational(11) / 27 + 1);
        CHECK_FALSE(verify_certificate(j).ok);
    }
    SUBCASE("negated multiplier") {
        bool flipped = false;
        for (auto& block : j["multipliers"]) {
            for (auto& v : block["lambda"]) {
                Rational r = parse_rational(v.get<std::string>());
                if (r != 0) {
                    v = rational_to_string(-r);
                    flipped = true;
                    break;
                }
            }
            if (flipped) break;
        }
        REQUIRE(flipped);
        CHECK_FALSE(verify_certificate(j).ok);
    }
    SUBCASE("perturbed supermartingale value") {
        // Shift U(l_init) by one; the binding initial-gap condition breaks.
        j["uesm"]["l_init"].push_back(
            nlohmann::json{{"m", nlohmann::json::object()}, {"c", "1"}});
        CHECK_FALSE(verify_certificate(j).ok);
    }
    SUBCASE("wrong degree advertises a different product basis") {
        j["degree_D"] = j["degree_D"].get<unsigned>() + 1;
        CHECK_FALSE(verify_certificate(j).ok);
    }
    SUBCASE("swapped mode") {
        j["mode"] = "equivalence";
        CHECK_FALSE(verify_certificate(j).ok);
    }
}

TEST_CASE("verification is pure") {
    // Verifying must not depend on wall-clock metadata.
    nlohmann::json j = fresh_certificate("transmission_loop10_a.ppl",
                                         "transmission_loop10_b.ppl", "similarity", true);
    j["meta"]["created"] = "1970-01-01T00:00:00Z";
    j["meta"]["time_ms"] = 0;
    CHECK(verify_certificate(j).ok);
}
