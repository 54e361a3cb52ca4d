// SPDX-License-Identifier: Apache-2.0
#include "eqrefute/handelman.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace eqrefute {

namespace {
constexpr size_t kProductCap = 20000;
}

std::vector<Polynomial> handelman_products(const Conjunction& premise, size_t nvars, unsigned D) {
    // Exact duplicates contribute identical products; merge them up front so
    // the basis (and thus multiplier indexing) stays canonical.
    std::vector<Polynomial> atoms;
    {
        Conjunction seen;
        for (const auto& a : premise) {
            if (std::find(seen.begin(), seen.end(), a) != seen.end()) continue;
            seen.push_back(a);
            atoms.push_back(a.expr.to_polynomial());
        }
    }
    std::vector<Polynomial> out;
    out.push_back(Polynomial::constant(nvars, Rational(1)));
    // Multisets of atom indices, sizes 1..D, non-decreasing index tuples in
    // lexicographic order. All atoms are affine, so size bounds total degree.
    std::vector<size_t> tuple;
    auto recurse = [&](auto&& self, size_t min_index, unsigned remaining,
                       const Polynomial& acc) -> void {
        for (size_t i = min_index; i < atoms.size(); ++i) {
            Polynomial next = acc * atoms[i];
            if (out.size() >= kProductCap)
                throw std::length_error(
                    "Handelman basis exceeds 20000 products; lower the degree or simplify the "
                    "premise");
            out.push_back(next);
            if (remaining > 1) self(self, i, remaining - 1, next);
        }
    };
    if (D >= 1 && !atoms.empty())
        recurse(recurse, 0, D, Polynomial::constant(nvars, Rational(1)));
    return out;
}

LpLayout build_lp(const ConstraintSet& cs, const Rational& gamma_min, const Rational& gamma_cap) {
    LpLayout layout;
    SimplexProblem& p = layout.problem;
    layout.num_template_vars = static_cast<int>(cs.space.size());
    for (size_t i = 0; i < cs.space.size(); ++i) p.add_var(false);

    bool any_strict = false;
    for (const auto& r : cs.relationals) any_strict |= r.strict;
    if (any_strict) {
        layout.gamma_var = p.add_var(false);
        SimplexRow lo;
        lo.terms.push_back({*layout.gamma_var, Rational(1)});
        lo.op = RowOp::Ge;
        lo.rhs = gamma_min;
        p.rows.push_back(lo);
        SimplexRow hi;
        hi.terms.push_back({*layout.gamma_var, Rational(1)});
        hi.op = RowOp::Le;
        hi.rhs = gamma_cap;
        p.rows.push_back(hi);
    }

    for (const auto& e : cs.entailments) {
        auto products = handelman_products(e.premise, e.nvars, e.degree_bound);
        int block = p.num_vars;
        for (size_t i = 0; i < products.size(); ++i) p.add_var(true);
        layout.lambda_blocks.push_back({e.key, {block, products.size()}});

        std::map<Monomial, SimplexRow, MonomialLess> rows;
        for (const auto& [m, aff] : e.conclusion.terms()) {
            SimplexRow& row = rows[m];
            for (const auto& [tv, c] : aff.terms) row.terms.push_back({tv, c});
            row.rhs = -aff.constant;
        }
        for (size_t i = 0; i < products.size(); ++i)
            for (const auto& [m, c] : products[i].terms())
                rows[m].terms.push_back({block + static_cast<int>(i), -c});
        for (auto& [m, row] : rows) {
            row.op = RowOp::Eq;
            p.rows.push_back(std::move(row));
        }
    }

    for (const auto& r : cs.relationals) {
        SimplexRow row;
        for (const auto& [tv, c] : r.expr.terms) row.terms.push_back({tv, c});
        if (r.strict) row.terms.push_back({*layout.gamma_var, Rational(-1)});
        row.op = RowOp::Ge;
        row.rhs = -r.expr.constant;
        p.rows.push_back(row);
    }

    p.maximize = true;
    if (cs.objective.has_value())
        p.objective[static_cast<size_t>(*cs.objective)] = 1;
    else if (layout.gamma_var.has_value())
        p.objective[static_cast<size_t>(*layout.gamma_var)] = 1;
    return layout;
}

LpSolution solve_constraints(const ConstraintSet& cs, const Rational& gamma_min,
                             const Rational& gamma_cap, const Deadline& deadline) {
    LpLayout layout = build_lp(cs, gamma_min, gamma_cap);
    SimplexResult res = solve_simplex(layout.problem, deadline);
    LpSolution sol;
    bool clamped = false;
    if (res.status == SimplexStatus::Unbounded && cs.objective.has_value()) {
        SimplexRow cap;
        cap.terms.push_back({*cs.objective, Rational(1)});
        cap.op = RowOp::Le;
        cap.rhs = Rational(1000000000);
        layout.problem.rows.push_back(cap);
        res = solve_simplex(layout.problem, deadline);
        clamped = true;
    }
    switch (res.status) {
        case SimplexStatus::Optimal:
            sol.status = clamped ? LpStatus::Feasible : LpStatus::Optimal;
            break;
        case SimplexStatus::Unbounded:
            // Zero objective or capped gamma cannot be unbounded; a clamped
            // retry ending here means the cap itself was not binding, which
            // the simplex rules out. Treat defensively as feasible if a point
            // came back.
            sol.status = res.point.empty() ? LpStatus::Infeasible : LpStatus::Feasible;
            break;
        case SimplexStatus::Infeasible:
            sol.status = LpStatus::Infeasible;
            return sol;
        case SimplexStatus::Timeout:
            sol.status = LpStatus::Timeout;
            return sol;
    }
    sol.iterations = res.iterations;
    sol.objective = res.objective_value;
    sol.assignment.assign(res.point.begin(),
                          res.point.begin() + layout.num_template_vars);
    if (layout.gamma_var.has_value())
        sol.gamma = res.point.at(static_cast<size_t>(*layout.gamma_var));
    for (const auto& [key, block] : layout.lambda_blocks) {
        std::vector<Rational> lam(res.point.begin() + block.first,
                                  res.point.begin() + block.first +
                                      static_cast<long>(block.second));
        sol.multipliers.emplace(key, std::move(lam));
    }
    return sol;
}

RecheckReport exact_recheck(const Conjunction& premise, size_t nvars, unsigned D,
                            const Polynomial& conclusion, const std::vector<Rational>& lambdas) {
    RecheckReport rep;
    std::vector<Polynomial> products;
    try {
        products = handelman_products(premise, nvars, D);
    } catch (const std::length_error& e) {
        rep.ok = false;
        rep.detail = e.what();
        return rep;
    }
    if (products.size() != lambdas.size()) {
        rep.ok = false;
        rep.detail = "multiplier count " + std::to_string(lambdas.size()) +
                     " does not match basis size " + std::to_string(products.size());
        return rep;
    }
    Polynomial expansion(nvars);
    for (size_t i = 0; i < products.size(); ++i) {
        if (lambdas[i] < 0) {
            rep.ok = false;
            rep.detail = "negative multiplier at index " + std::to_string(i);
            return rep;
        }
        if (lambdas[i] != 0) expansion += products[i].scaled(lambdas[i]);
    }
    if (expansion == conclusion) return rep;
    rep.ok = false;
    Polynomial diff = conclusion - expansion;
    rep.detail = "coefficient mismatch; conclusion minus expansion has " +
                 std::to_string(diff.terms().size()) + " nonzero terms";
    return rep;
}

std::string lp_to_string(const ConstraintSet& cs, const LpLayout& layout) {
    std::vector<std::string> names(static_cast<size_t>(layout.problem.num_vars));
    for (size_t i = 0; i < cs.space.size(); ++i) names[i] = cs.space.name(static_cast<int>(i));
    if (layout.gamma_var.has_value()) names[static_cast<size_t>(*layout.gamma_var)] = "gamma";
    for (const auto& [key, block] : layout.lambda_blocks)
        for (size_t i = 0; i < block.second; ++i)
            names[static_cast<size_t>(block.first) + i] =
                "lam[" + key + "][" + std::to_string(i) + "]";

    std::ostringstream os;
    os << "\\ exact rational LP; coefficients printed as num/den\n";
    os << "maximize ";
    bool some = false;
    for (size_t i = 0; i < layout.problem.objective.size(); ++i) {
        if (layout.problem.objective[i] == 0) continue;
        if (some) os << " + ";
        os << layout.problem.objective[i].get_str() << " " << names[i];
        some = true;
    }
    if (!some) os << "0";
    os << "\nsubject to\n";
    for (size_t r = 0; r < layout.problem.rows.size(); ++r) {
        const auto& row = layout.problem.rows[r];
        os << "  r" << r << ": ";
        bool first = true;
        for (const auto& [v, c] : row.terms) {
            if (c == 0) continue;
            if (!first) os << " + ";
            os << c.get_str() << " " << names[static_cast<size_t>(v)];
            first = false;
        }
        if (first) os << "0";
        os << (row.op == RowOp::Le ? " <= " : row.op == RowOp::Ge ? " >= " : " = ");
        os << row.rhs.get_str() << "\n";
    }
    os << "free\n ";
    for (size_t i = 0; i < names.size(); ++i)
        if (!layout.problem.nonneg[i]) os << " " << names[i];
    os << "\nend\n";
    return os.str();
}

}  // namespace eqrefute
