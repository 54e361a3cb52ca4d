// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "eqrefute/distribution.hpp"
#include "eqrefute/linear.hpp"
#include "eqrefute/polynomial.hpp"

namespace eqrefute {

struct SourceSpan {
    int line = 0;
    int col = 0;
};

enum class StmtKind { Assign, Sample, IfProb, IfPred, While, Return };

// One statement; branch and loop bodies nest by value. Fields are used
// according to kind.
struct Stmt {
    StmtKind kind = StmtKind::Assign;
    SourceSpan span;

    size_t var = 0;            // Assign, Sample
    Polynomial expr;           // Assign
    DistributionSpec dist;     // Sample
    Rational prob = 0;         // IfProb
    LinearPredicate pred;      // IfPred, While
    std::vector<Stmt> then_branch;
    std::vector<Stmt> else_branch;
    std::vector<Stmt> body;    // While
    std::vector<size_t> ret;   // Return
};

struct ProgramAst {
    std::vector<std::string> vars;  // declaration order
    std::vector<Stmt> stmts;        // includes the trailing return
    std::vector<size_t> return_vars;
    // Leading constant assignments, one per variable at most.
    std::map<size_t, Rational> initial_assignments;

    std::vector<Rational> x_init() const {
        std::vector<Rational> v(vars.size(), Rational(0));
        for (const auto& [i, c] : initial_assignments) v[i] = c;
        return v;
    }
};

// Parses the probabilistic while-language. Errors carry line/col positions.
// Enforces: linear guard atoms, distribution parameter ranges, prob literals
// in [0, 1], definite initialization before first read, and a single trailing
// return statement.
std::shared_ptr<const ProgramAst> parse_program(const std::string& source);

// Number of leading statements folded into x_init: the maximal prefix of
// constant assignments to distinct variables.
size_t leading_constant_prefix(const ProgramAst& prog);

// Canonical source text; parsing it again yields a structurally identical
// program.
std::string pretty_print(const ProgramAst& prog);

}  // namespace eqrefute
