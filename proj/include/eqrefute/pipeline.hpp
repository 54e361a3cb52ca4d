// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "eqrefute/rational.hpp"

namespace eqrefute {

inline constexpr int kExitRefuted = 0;
inline constexpr int kExitUnknown = 10;
inline constexpr int kExitPrecondition = 11;
inline constexpr int kExitTimeout = 12;

struct RunConfig {
    std::string program_a, program_b;
    // Inline sources take precedence over paths when set (library callers).
    std::optional<std::string> source_a, source_b;

    std::string mode = "equivalence";
    std::string metric = "l1";
    std::optional<Rational> epsilon;
    bool maximize = false;

    unsigned degree_min = 1;
    unsigned degree_max = 5;
    std::optional<unsigned> handelman_degree;

    std::string invariants_a, invariants_b;
    std::string ost = "auto";

    std::string verify = "exact";  // exact | sample | both
    size_t mc_samples = 100000;
    std::uint64_t seed = 1;
    std::uint64_t max_steps = 50'000'000;
    double timeout_seconds = 0;  // 0 disables the deadline

    std::string out_path = "certificate.json";
    std::string emit_lp_path;

    Rational gamma_min = Rational(1) / 1000000;
};

struct RunOutcome {
    int exit_code = kExitUnknown;
    std::string verdict = "unknown";
    std::optional<Rational> epsilon;
    unsigned degree = 0;
    long time_ms = 0;
    std::vector<std::string> diagnostics;
    std::optional<nlohmann::ordered_json> certificate;
};

// Full analysis: parse, validate, invariants, OST selection, degree ladder
// with LP synthesis, certificate emission and verification. Never claims
// equivalence; the only positive outcome is a refutation certificate.
RunOutcome run_pipeline(const RunConfig& cfg);

// "VERDICT <refuted|unknown> mode=<m> epsilon=<rat|-> degree=<d> time_ms=<t>"
std::string verdict_line(const RunOutcome& outcome, const RunConfig& cfg);

}  // namespace eqrefute
