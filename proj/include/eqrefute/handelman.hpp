// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eqrefute/simplex.hpp"
#include "eqrefute/template_poly.hpp"

namespace eqrefute {

// Products of premise atoms (as polynomials) with total degree <= D, in a
// stable order: the empty product 1 first, then multisets of atom indices in
// depth-first prefix order ((0), (0,0), (0,1), (1), ...). Exact duplicates
// among the atoms are merged first. Throws std::length_error past 20000
// products; callers should lower the degree or simplify the premise.
std::vector<Polynomial> handelman_products(const Conjunction& premise, size_t nvars, unsigned D);

// LP reduction of a ConstraintSet. One free LP variable per template unknown,
// one nonnegative multiplier per Handelman product per entailment, equality
// rows matching monomial coefficients, relational rows as stated; strict
// relationals share a slack gamma with gamma_min <= gamma <= gamma_cap.
struct LpLayout {
    SimplexProblem problem;
    int num_template_vars = 0;
    // entailment key -> (first multiplier LP variable, count)
    std::vector<std::pair<std::string, std::pair<int, size_t>>> lambda_blocks;
    std::optional<int> gamma_var;
};

LpLayout build_lp(const ConstraintSet& cs, const Rational& gamma_min, const Rational& gamma_cap);

enum class LpStatus { Optimal, Feasible, Infeasible, Timeout };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    // template variable id -> value
    std::vector<Rational> assignment;
    std::map<std::string, std::vector<Rational>> multipliers;
    Rational objective = 0;
    Rational gamma = 0;
    long iterations = 0;
};

// build_lp + exact simplex. An unbounded maximization is retried once with
// the objective clamped to 1e9 and reported as Feasible rather than Optimal.
LpSolution solve_constraints(const ConstraintSet& cs, const Rational& gamma_min,
                             const Rational& gamma_cap, const Deadline& deadline);

// Certificate-side identity check: regenerates the product basis and verifies
// lambdas >= 0 and sum_i lambda_i * h_i == conclusion coefficient-wise.
struct RecheckReport {
    bool ok = true;
    std::string detail;
};

RecheckReport exact_recheck(const Conjunction& premise, size_t nvars, unsigned D,
                            const Polynomial& conclusion, const std::vector<Rational>& lambdas);

// Human-readable LP dump for --emit-lp.
std::string lp_to_string(const ConstraintSet& cs, const LpLayout& layout);

}  // namespace eqrefute
