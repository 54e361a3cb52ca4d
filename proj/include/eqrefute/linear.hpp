// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqrefute/polynomial.hpp"
#include "eqrefute/rational.hpp"
#include "eqrefute/simplex.hpp"

namespace eqrefute {

// Affine expression c0 + sum_i coeffs[i] * x_i over a fixed universe.
struct LinearExpr {
    std::vector<Rational> coeffs;
    Rational constant = 0;

    explicit LinearExpr(size_t nvars = 0) : coeffs(nvars, Rational(0)) {}

    size_t nvars() const { return coeffs.size(); }
    bool is_constant() const;
    Rational evaluate(const std::vector<Rational>& point) const;
    double evaluate_double(const std::vector<double>& point) const;
    Polynomial to_polynomial() const;

    LinearExpr operator-() const;
    LinearExpr operator+(const LinearExpr& o) const;
    LinearExpr operator-(const LinearExpr& o) const;

    bool operator==(const LinearExpr& o) const = default;

    std::string to_string(const std::vector<std::string>& names) const;
};

// expr >= 0, or expr > 0 when strict.
struct LinearAtom {
    LinearExpr expr;
    bool strict = false;

    bool operator==(const LinearAtom& o) const = default;

    // !(e >= 0) is -e > 0; !(e > 0) is -e >= 0.
    LinearAtom negated() const { return {-expr, !strict}; }

    bool holds(const std::vector<Rational>& point) const {
        Rational v = expr.evaluate(point);
        return strict ? v > 0 : v >= 0;
    }
    bool holds_double(const std::vector<double>& point) const {
        double v = expr.evaluate_double(point);
        return strict ? v > 0 : v >= 0;
    }

    std::string to_string(const std::vector<std::string>& names) const;
};

using Conjunction = std::vector<LinearAtom>;

// Disjunctive normal form: union of conjunctive cells. No cells means false;
// a single empty cell means true.
struct LinearPredicate {
    std::vector<Conjunction> cells;

    static LinearPredicate top() { return {{Conjunction{}}}; }
    static LinearPredicate bottom() { return {}; }
    static LinearPredicate single(const LinearAtom& atom) { return {{Conjunction{atom}}}; }

    bool is_top() const { return cells.size() == 1 && cells[0].empty(); }

    bool holds(const std::vector<Rational>& point) const;
    bool holds_double(const std::vector<double>& point) const;

    LinearPredicate negated() const;
    LinearPredicate conjoin(const LinearPredicate& o) const;
    LinearPredicate disjoin(const LinearPredicate& o) const;

    bool operator==(const LinearPredicate& o) const = default;

    std::string to_string(const std::vector<std::string>& names) const;
};

// Exact feasibility of a conjunction of atoms over the rationals. Strict atoms
// are handled by maximizing a shared positive slack; a witness valuation is
// returned when the system is feasible.
std::optional<std::vector<Rational>> feasible_point(const Conjunction& atoms, size_t nvars,
                                                    const Deadline& deadline = Deadline::never());

}  // namespace eqrefute
