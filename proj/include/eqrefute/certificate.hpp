// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "eqrefute/constraints.hpp"
#include "eqrefute/pcfg.hpp"
#include "eqrefute/polynomial.hpp"

namespace eqrefute {

struct CertificateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Self-contained refutation evidence: concrete polynomials, exact multipliers
// for every entailment, the invariants they were proved against and the
// program sources, so a verifier can rebuild the whole constraint system
// without re-running synthesis.
struct Certificate {
    std::string mode;  // "equivalence" | "similarity"
    std::optional<Metric> metric;
    std::optional<Rational> epsilon;
    unsigned degree_d = 1;
    unsigned degree_D = 2;

    Polynomial f;
    std::vector<Polynomial> uesm;
    std::vector<Polynomial> lesm;
    std::vector<std::pair<std::string, std::vector<Rational>>> multipliers;

    OstCondition ost_condition = OstCondition::C1;
    std::string ost_eligibility;
    std::vector<std::string> ost_assumed;
    std::optional<Rational> bound_c;
    std::optional<RsmResult> rsm1, rsm2;
    bool ost_downgraded = false;

    std::string inv1_origin, inv2_origin;
    std::string inv1_text, inv2_text;

    std::string program1_src, program2_src;
    std::string epsilon_mode;  // "maximize" | "fixed" | ""
    Rational gamma_min = Rational(1) / 1000000;
    std::uint64_t seed = 0;
    long time_ms = 0;
    std::string created;

    // Name universes used for rendering polynomials and keying locations;
    // they mirror the lowered programs and are re-derived on decode.
    std::vector<std::string> out_names, p1_names, p2_names;
    std::vector<std::string> p1_labels, p2_labels;
};

nlohmann::ordered_json certificate_to_json(const Certificate& c);

// Strict decode; throws CertificateError on missing fields, unknown variable
// names or malformed rationals. Program universes come from re-lowering the
// embedded sources.
Certificate certificate_from_json(const nlohmann::json& j);

struct VerifyReport {
    bool ok = true;
    std::vector<std::string> errors;
    size_t entailments_checked = 0;
    size_t relationals_checked = 0;

    void fail(std::string msg) {
        ok = false;
        errors.push_back(std::move(msg));
    }
};

// Exact re-verification: re-lowers the embedded programs, regenerates every
// entailment from the embedded invariants and settings, instantiates the
// certificate's polynomials and checks each Handelman identity and relational
// side condition with rational arithmetic. No LP is solved.
VerifyReport verify_certificate(const nlohmann::json& j,
                                const Deadline& deadline = Deadline::never());

}  // namespace eqrefute
