// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eqrefute/pcfg.hpp"

namespace eqrefute {

// Per-location conjunction of non-strict linear inequalities containing all
// reachable states. An unreachable location carries the single atom -1 >= 0.
struct Invariant {
    std::vector<Conjunction> locations;
    std::string origin;  // "intervals", "file", "trivial"

    const Conjunction& at(size_t loc) const { return locations.at(loc); }
};

// All-true invariant.
Invariant trivial_invariant(const Pcfg& pcfg);

// Forward interval analysis from the initial valuation: guard-cell bound
// refinement with integrality sharpening, widening after widen_after joins
// per location, two descending passes, and a final inductiveness check that
// reverts the descent if it broke containment.
Invariant generate_interval_invariants(const Pcfg& pcfg, size_t widen_after = 6);

// Text format: one atom per line, "loc <label>: <c0> + <ci>*<var> ... >= 0",
// "#" comments. Labels and variable names must match the pCFG.
Invariant parse_invariant_file(const std::string& text, const Pcfg& pcfg);
std::string emit_invariant_file(const Invariant& inv, const Pcfg& pcfg);

struct InductivenessReport {
    bool ok = true;
    uint64_t runs = 0;
    std::vector<std::string> counterexamples;  // capped listing
};

// Statistical soundness check over sampled runs plus an exact one-step
// closure check for transitions with affine or sampled updates.
InductivenessReport check_inductive(const Pcfg& pcfg, const Invariant& inv,
                                    uint64_t n_samples, uint64_t seed,
                                    uint64_t max_steps = 50'000'000);

// Tightest derivable lower/upper bounds on one variable under a conjunction;
// a missing side means the LP is unbounded in that direction.
std::pair<std::optional<Rational>, std::optional<Rational>> conjunction_var_bounds(
    const Conjunction& atoms, size_t nvars, size_t var);

// True when the terminal-location invariant bounds every output variable in
// both directions (finite first moments under the L^p metrics).
bool check_bounded_output_range(const Pcfg& pcfg, const Invariant& inv);

}  // namespace eqrefute
