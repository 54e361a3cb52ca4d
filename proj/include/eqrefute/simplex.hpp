// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <optional>
#include <utility>
#include <vector>

#include "eqrefute/rational.hpp"

namespace eqrefute {

// Wall-clock budget shared across long-running stages. A default-constructed
// deadline never expires.
struct Deadline {
    std::optional<std::chrono::steady_clock::time_point> at;

    static Deadline never() { return {}; }
    static Deadline in_seconds(double s) {
        Deadline d;
        d.at = std::chrono::steady_clock::now() +
               std::chrono::microseconds(static_cast<long long>(s * 1e6));
        return d;
    }
    bool expired() const {
        return at.has_value() && std::chrono::steady_clock::now() > *at;
    }
};

enum class SimplexStatus { Optimal, Infeasible, Unbounded, Timeout };

enum class RowOp { Le, Ge, Eq };

struct SimplexRow {
    std::vector<std::pair<int, Rational>> terms;
    RowOp op = RowOp::Le;
    Rational rhs = 0;
};

// minimize or maximize objective . x subject to rows, with per-variable sign
// restriction (nonneg[i] ? x_i >= 0 : x_i free).
struct SimplexProblem {
    int num_vars = 0;
    bool maximize = false;
    std::vector<Rational> objective;
    std::vector<SimplexRow> rows;
    std::vector<bool> nonneg;

    int add_var(bool nonnegative, const Rational& obj_coeff = 0) {
        nonneg.push_back(nonnegative);
        objective.push_back(obj_coeff);
        return num_vars++;
    }
};

struct SimplexResult {
    SimplexStatus status = SimplexStatus::Infeasible;
    std::vector<Rational> point;
    Rational objective_value = 0;
    long iterations = 0;
};

// Exact two-phase primal simplex over rationals. Dantzig pricing with a
// permanent switch to Bland's rule after an iteration threshold, so the solve
// always terminates. Unboundedness is only reported in phase 2.
SimplexResult solve_simplex(const SimplexProblem& problem,
                            const Deadline& deadline = Deadline::never());

}  // namespace eqrefute
