// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eqrefute/certificate.hpp"
#include "eqrefute/invariant.hpp"
#include "eqrefute/pcfg.hpp"
#include "eqrefute/polynomial.hpp"

namespace eqrefute {

// Two-sided 99% normal quantile used for CLT half-widths.
inline constexpr double kZ99 = 2.5758293035489004;

struct McEstimate {
    size_t samples = 0;
    size_t censored = 0;
    double mean = 0;
    double half_width = 0;
    std::string interval;  // "clt" or "hoeffding"

    // Runs cut off by the step budget are excluded from the mean, so the
    // estimate only stands when they are a negligible fraction.
    bool inconclusive() const { return censored * 10000 > samples; }
};

// i.i.d. estimate of E[f(output)] over n >= 1000 runs. Workers draw from
// seeds seed+0 .. seed+workers-1; aggregation is order-independent. When
// f_range is given the half-width is a 99% Hoeffding bound, otherwise a CLT
// interval.
McEstimate mc_expectation(const Pcfg& p, const Polynomial& f, size_t n, std::uint64_t seed,
                          std::uint64_t max_steps = 50'000'000,
                          std::optional<std::pair<double, double>> f_range = std::nullopt,
                          unsigned workers = 1);

// Exact range of f over the invariant's terminal box; nullopt when the box
// leaves any variable of f unbounded.
std::optional<std::pair<Rational, Rational>> output_range(const Polynomial& f, const Pcfg& p,
                                                          const Invariant& inv);

enum class McVerdict { Consistent, Inconsistent, Inconclusive };

struct McReport {
    McEstimate e1, e2;
    double u_bound = 0;
    double l_bound = 0;
    McVerdict verdict = McVerdict::Consistent;
    std::vector<std::string> notes;
};

// Statistical cross-check of a certificate: the UESM bound must not sit
// below the sampled mean of program 1 minus slack, the LESM bound not above
// program 2 plus slack, and in similarity mode the sampled gap must reach
// epsilon minus both slacks. Censoring beyond 1 in 10^4 makes the verdict
// inconclusive rather than a pass or fail.
McReport mc_consistency(const Certificate& cert, const Pcfg& p1, const Pcfg& p2, size_t n,
                        std::uint64_t seed, std::uint64_t max_steps = 50'000'000,
                        unsigned workers = 1);

}  // namespace eqrefute
