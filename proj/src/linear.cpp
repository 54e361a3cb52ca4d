// SPDX-License-Identifier: Apache-2.0
#include "eqrefute/linear.hpp"

#include <cassert>
#include <sstream>

namespace eqrefute {

bool LinearExpr::is_constant() const {
    for (const auto& c : coeffs)
        if (c != 0) return false;
    return true;
}

Rational LinearExpr::evaluate(const std::vector<Rational>& point) const {
    assert(point.size() == coeffs.size());
    Rational acc = constant;
    for (size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0) acc += coeffs[i] * point[i];
    return acc;
}

double LinearExpr::evaluate_double(const std::vector<double>& point) const {
    double acc = to_double(constant);
    for (size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0) acc += to_double(coeffs[i]) * point[i];
    return acc;
}

Polynomial LinearExpr::to_polynomial() const {
    Polynomial p = Polynomial::constant(coeffs.size(), constant);
    for (size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0)
            p += Polynomial::variable(coeffs.size(), i).scaled(coeffs[i]);
    return p;
}

LinearExpr LinearExpr::operator-() const {
    LinearExpr r(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] = -coeffs[i];
    r.constant = -constant;
    return r;
}

LinearExpr LinearExpr::operator+(const LinearExpr& o) const {
    assert(coeffs.size() == o.coeffs.size());
    LinearExpr r(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) r.coeffs[i] = coeffs[i] + o.coeffs[i];
    r.constant = constant + o.constant;
    return r;
}

LinearExpr LinearExpr::operator-(const LinearExpr& o) const { return *this + (-o); }

std::string LinearExpr::to_string(const std::vector<std::string>& names) const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        Rational c = coeffs[i];
        if (first) {
            if (c < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        if (c != 1) os << rational_to_string(c) << "*";
        os << names[i];
    }
    if (constant != 0 || first) {
        Rational c = constant;
        if (first) {
            os << rational_to_string(c);
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
            os << rational_to_string(c);
        }
    }
    return os.str();
}

std::string LinearAtom::to_string(const std::vector<std::string>& names) const {
    return expr.to_string(names) + (strict ? " > 0" : " >= 0");
}

bool LinearPredicate::holds(const std::vector<Rational>& point) const {
    for (const auto& cell : cells) {
        bool ok = true;
        for (const auto& atom : cell)
            if (!atom.holds(point)) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

bool LinearPredicate::holds_double(const std::vector<double>& point) const {
    for (const auto& cell : cells) {
        bool ok = true;
        for (const auto& atom : cell)
            if (!atom.holds_double(point)) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

LinearPredicate LinearPredicate::negated() const {
    // De Morgan: the negation of a DNF is a conjunction of clauses, each the
    // disjunction of negated atoms of one cell; distribute back into DNF.
    LinearPredicate acc = top();
    for (const auto& cell : cells) {
        LinearPredicate clause = bottom();
        for (const auto& atom : cell) clause = clause.disjoin(single(atom.negated()));
        acc = acc.conjoin(clause);
    }
    return acc;
}

LinearPredicate LinearPredicate::conjoin(const LinearPredicate& o) const {
    LinearPredicate r = bottom();
    for (const auto& ca : cells) {
        for (const auto& cb : o.cells) {
            Conjunction merged = ca;
            merged.insert(merged.end(), cb.begin(), cb.end());
            r.cells.push_back(std::move(merged));
        }
    }
    return r;
}

LinearPredicate LinearPredicate::disjoin(const LinearPredicate& o) const {
    LinearPredicate r = *this;
    r.cells.insert(r.cells.end(), o.cells.begin(), o.cells.end());
    return r;
}

std::string LinearPredicate::to_string(const std::vector<std::string>& names) const {
    if (cells.empty()) return "0 >= 1";
    std::ostringstream os;
    for (size_t c = 0; c < cells.size(); ++c) {
        if (c) os << " or ";
        if (cells[c].empty()) {
            os << "0 >= 0";
            continue;
        }
        os << "(";
        for (size_t i = 0; i < cells[c].size(); ++i) {
            if (i) os << " and ";
            os << cells[c][i].to_string(names);
        }
        os << ")";
    }
    return os.str();
}

std::optional<std::vector<Rational>> feasible_point(const Conjunction& atoms, size_t nvars,
                                                    const Deadline& deadline) {
    SimplexProblem p;
    for (size_t i = 0; i < nvars; ++i) p.add_var(false);
    bool any_strict = false;
    for (const auto& atom : atoms)
        if (atom.strict) any_strict = true;
    int slack = -1;
    if (any_strict) {
        slack = p.add_var(true, Rational(1));
        p.maximize = true;
        SimplexRow cap;
        cap.terms.push_back({slack, Rational(1)});
        cap.op = RowOp::Le;
        cap.rhs = 1;
        p.rows.push_back(cap);
    }
    for (const auto& atom : atoms) {
        SimplexRow row;
        for (size_t i = 0; i < nvars; ++i)
            if (atom.expr.coeffs[i] != 0)
                row.terms.push_back({static_cast<int>(i), atom.expr.coeffs[i]});
        if (atom.strict) row.terms.push_back({slack, Rational(-1)});
        row.op = RowOp::Ge;
        row.rhs = -atom.expr.constant;
        p.rows.push_back(row);
    }
    auto res = solve_simplex(p, deadline);
    if (res.status != SimplexStatus::Optimal && res.status != SimplexStatus::Unbounded)
        return std::nullopt;
    if (res.status == SimplexStatus::Unbounded) {
        // Only the slack is maximized and it is capped, so this cannot happen
        // for strict systems; a non-strict system has a zero objective.
        assert(!any_strict);
    }
    if (any_strict && res.objective_value <= 0) return std::nullopt;
    if (res.point.empty()) return std::nullopt;
    res.point.resize(nvars);
    return res.point;
}

}  // namespace eqrefute
