// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "eqrefute/distribution.hpp"
#include "eqrefute/linear.hpp"
#include "eqrefute/polynomial.hpp"

namespace eqrefute {

struct ProgramAst;

// Transition update: at most one variable changes per transition.
struct UpdateNone {
    bool operator==(const UpdateNone&) const = default;
};
struct UpdateDet {
    size_t var;
    Polynomial expr;
    bool operator==(const UpdateDet&) const = default;
};
struct UpdateSample {
    size_t var;
    DistributionSpec dist;
    bool operator==(const UpdateSample&) const = default;
};
using UpdateElement = std::variant<UpdateNone, UpdateDet, UpdateSample>;

struct Transition {
    size_t source = 0;
    LinearPredicate guard;
    // Successor distribution; probabilities are positive and sum to 1.
    std::vector<std::pair<size_t, Rational>> successors;
    UpdateElement update;
};

// Probabilistic control-flow graph. Location 0 is the initial location; the
// terminal location carries a guard-true self-loop and no update.
struct Pcfg {
    std::vector<std::string> location_labels;
    size_t l_init = 0;
    size_t l_out = 0;
    std::vector<Transition> transitions;
    std::vector<std::string> var_names;
    std::vector<Rational> x_init;
    std::vector<size_t> out_vars;
    // Per variable: value stays integral along every run (integer initial
    // value, integer-coefficient updates, integer-valued distributions).
    std::vector<bool> integer_valued;
    // Source program, kept for structural termination analyses and metadata.
    std::shared_ptr<const ProgramAst> source;

    size_t num_locations() const { return location_labels.size(); }
    size_t num_vars() const { return var_names.size(); }
    std::vector<size_t> transitions_from(size_t loc) const;
    std::optional<size_t> location_by_label(const std::string& label) const;
    std::vector<std::string> out_var_names() const;
};

struct ValidationIssue {
    std::string message;
    size_t location = 0;
    std::vector<Rational> witness;
};

// Structural and semantic well-formedness: successor probabilities positive
// and summing to 1, terminal self-loop shape, guard totality and pairwise
// exclusivity per location (exact rational feasibility, strict atoms via a
// positive-slack program). Returns all violations found.
std::vector<ValidationIssue> validate_pcfg(const Pcfg& pcfg);

// Syntactic sufficient check for a deterministic bound on every run length:
// each loop has a counter atom `x <= B` (or mirrored) whose variable only
// moves toward the bound by positive constant steps, and every iteration path
// either steps the counter or permanently falsifies another single-variable
// guard conjunct by a constant assignment. Sound, incomplete.
bool check_statically_bounded(const Pcfg& pcfg);

struct Invariant;

// True when all deterministic updates are x := x + c, or x := c with the
// invariant bounding x at the source location, and every sampled distribution
// has bounded support.
bool check_bounded_updates(const Pcfg& pcfg, const Invariant& inv);

}  // namespace eqrefute
