// SPDX-License-Identifier: Apache-2.0
//
// eqrefute: refute output-distribution equivalence of two probabilistic
// programs, or certify a lower bound on their Kantorovich distance. The
// certificate is written as JSON and re-verified before the tool reports
// success.
#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "eqrefute/pipeline.hpp"
#include "eqrefute/rational.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Distribution-equivalence refuter for probabilistic programs"};

    eqrefute::RunConfig cfg;
    std::string epsilon_str;
    unsigned degree = 0;
    unsigned handelman_degree = 0;

    app.add_option("--program-a", cfg.program_a, "First program file")->required();
    app.add_option("--program-b", cfg.program_b, "Second program file")->required();
    app.add_option("--mode", cfg.mode, "equivalence | similarity")
        ->check(CLI::IsMember({"equivalence", "similarity"}))
        ->capture_default_str();
    app.add_option("--metric", cfg.metric, "l1 | l2 | discrete | uniform (similarity mode)")
        ->check(CLI::IsMember({"l1", "l2", "discrete", "uniform"}))
        ->capture_default_str();
    auto* eps_opt =
        app.add_option("--epsilon", epsilon_str, "Fixed distance bound to certify (rational)");
    auto* max_opt =
        app.add_flag("--maximize", cfg.maximize, "Maximize the certified distance bound");
    eps_opt->excludes(max_opt);
    auto* deg_opt = app.add_option("--degree", degree, "Single template degree to try");
    auto* dmin_opt = app.add_option("--degree-min", cfg.degree_min, "Lowest template degree")
                         ->capture_default_str();
    auto* dmax_opt = app.add_option("--degree-max", cfg.degree_max, "Highest template degree")
                         ->capture_default_str();
    deg_opt->excludes(dmin_opt)->excludes(dmax_opt);
    app.add_option("--handelman-degree", handelman_degree,
                   "Multiplier product degree (default: template degree + 1)");
    app.add_option("--invariants-a", cfg.invariants_a, "Invariant file for program a");
    app.add_option("--invariants-b", cfg.invariants_b, "Invariant file for program b");
    app.add_option("--ost", cfg.ost, "Stopping condition: auto | c1 | c2 | c3 | c4")
        ->check(CLI::IsMember({"auto", "c1", "c2", "c3", "c4"}))
        ->capture_default_str();
    app.add_option("--verify", cfg.verify, "Certificate check: exact | sample | both")
        ->check(CLI::IsMember({"exact", "sample", "both"}))
        ->capture_default_str();
    app.add_option("--mc-samples", cfg.mc_samples, "Samples for the statistical check")
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "Sampler seed")->capture_default_str();
    app.add_option("--max-steps", cfg.max_steps, "Per-run step budget before censoring")
        ->capture_default_str();
    app.add_option("--timeout", cfg.timeout_seconds, "Wall-clock budget in seconds (0 = none)")
        ->capture_default_str();
    app.add_option("--out", cfg.out_path, "Certificate output path")->capture_default_str();
    app.add_option("--emit-lp", cfg.emit_lp_path, "Dump the last LP in readable form");

    CLI11_PARSE(app, argc, argv);

    if (deg_opt->count() > 0) {
        cfg.degree_min = degree;
        cfg.degree_max = degree;
    }
    if (handelman_degree > 0) cfg.handelman_degree = handelman_degree;
    if (eps_opt->count() > 0) {
        try {
            cfg.epsilon = eqrefute::parse_rational(epsilon_str);
        } catch (const std::exception& e) {
            std::cerr << "error: --epsilon: " << e.what() << "\n";
            return eqrefute::kExitPrecondition;
        }
    }

    eqrefute::RunOutcome out = eqrefute::run_pipeline(cfg);
    for (const auto& d : out.diagnostics) std::cerr << d << "\n";
    std::cout << eqrefute::verdict_line(out, cfg) << std::endl;
    return out.exit_code;
}
