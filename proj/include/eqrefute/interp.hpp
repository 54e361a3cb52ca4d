// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "eqrefute/pcfg.hpp"

namespace eqrefute {

struct ProgramAst;

// Seeded randomness source. Every draw consumes a fixed number of engine
// words (uniforms one, normal two via Box-Muller), so identical seeds yield
// identical run prefixes and the source-level and graph-level interpreters
// stay aligned draw for draw.
class RandomSource {
  public:
    explicit RandomSource(uint64_t seed) : eng_(seed) {}

    // Uniform on [0, 1) with 53-bit resolution; one engine word.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double sample(const DistributionSpec& dist);

    // Exact-valued sampling; defined for bernoulli, uniformint and discrete.
    Rational sample_exact(const DistributionSpec& dist);

    // Uniform integer in [0, n) by rejection; unbiased.
    uint64_t below(uint64_t n);

    uint64_t raw() { return eng_(); }

  private:
    std::mt19937_64 eng_;
};

// Flat double-precision form of a pCFG for throughput sampling.
class CompiledPcfg {
  public:
    explicit CompiledPcfg(const Pcfg& pcfg);

    size_t num_vars() const { return nvars_; }
    size_t l_init() const { return l_init_; }
    size_t l_out() const { return l_out_; }
    const std::vector<size_t>& out_vars() const { return out_vars_; }
    const std::vector<double>& x_init() const { return x_init_; }

    // One transition step: picks the unique enabled transition, draws the
    // successor location, applies the update in place. Throws when zero or
    // several transitions are enabled.
    size_t step(size_t loc, std::vector<double>& x, RandomSource& rng) const;

  private:
    struct Atom {
        std::vector<std::pair<uint32_t, double>> coeffs;
        double constant;
        bool strict;
    };
    struct Term {
        double coeff;
        std::vector<std::pair<uint32_t, uint32_t>> pows;
    };
    struct CTransition {
        std::vector<std::vector<Atom>> cells;
        std::vector<size_t> succ_locs;
        std::vector<double> succ_cum;  // cumulative probabilities, last is 1
        int update_kind;               // 0 none, 1 deterministic, 2 sample
        uint32_t var = 0;
        std::vector<Term> poly;
        DistributionSpec dist;
    };

    bool guard_holds(const CTransition& t, const std::vector<double>& x) const;

    size_t nvars_, l_init_, l_out_;
    std::vector<size_t> out_vars_;
    std::vector<double> x_init_;
    std::vector<std::vector<CTransition>> by_loc_;
};

struct RunResult {
    bool terminated = false;
    uint64_t steps = 0;
    std::vector<double> output;  // projection onto V_out when terminated
};

inline constexpr uint64_t kDefaultMaxSteps = 50'000'000;

// Runs until the terminal location or the step budget. Budget exhaustion is
// reported, never silently dropped.
RunResult run_to_termination(const CompiledPcfg& pcfg, RandomSource& rng,
                             uint64_t max_steps = kDefaultMaxSteps);

struct ExactRunResult {
    bool terminated = false;
    uint64_t steps = 0;
    std::vector<Rational> output;
};

// Exact-rational execution; requires every sampled distribution to be
// bernoulli, uniformint or discrete.
ExactRunResult run_exact(const Pcfg& pcfg, RandomSource& rng,
                         uint64_t max_steps = kDefaultMaxSteps);

// Direct source-level execution used as an oracle for lowering: with the same
// RandomSource state both interpreters produce the same output valuation.
RunResult run_ast_program(const ProgramAst& prog, RandomSource& rng,
                          uint64_t max_steps = kDefaultMaxSteps);

}  // namespace eqrefute
