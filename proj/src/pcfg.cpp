// SPDX-License-Identifier: Apache-2.0
#include "eqrefute/pcfg.hpp"

#include <functional>

#include "eqrefute/ast.hpp"

namespace eqrefute {

std::vector<size_t> Pcfg::transitions_from(size_t loc) const {
    std::vector<size_t> out;
    for (size_t i = 0; i < transitions.size(); ++i)
        if (transitions[i].source == loc) out.push_back(i);
    return out;
}

std::optional<size_t> Pcfg::location_by_label(const std::string& label) const {
    for (size_t i = 0; i < location_labels.size(); ++i)
        if (location_labels[i] == label) return i;
    return std::nullopt;
}

std::vector<std::string> Pcfg::out_var_names() const {
    std::vector<std::string> names;
    for (size_t v : out_vars) names.push_back(var_names[v]);
    return names;
}

std::vector<ValidationIssue> validate_pcfg(const Pcfg& p) {
    std::vector<ValidationIssue> issues;
    auto add = [&](std::string msg, size_t loc, std::vector<Rational> wit = {}) {
        issues.push_back({std::move(msg), loc, std::move(wit)});
    };

    if (p.num_locations() == 0) {
        add("graph has no locations", 0);
        return issues;
    }
    if (p.x_init.size() != p.num_vars()) add("initial valuation size mismatch", p.l_init);
    if (p.l_out >= p.num_locations()) add("terminal location index out of range", 0);
    for (size_t v : p.out_vars)
        if (v >= p.num_vars()) add("output variable index out of range", p.l_out);

    std::vector<std::vector<size_t>> by_loc(p.num_locations());
    for (size_t i = 0; i < p.transitions.size(); ++i) {
        const Transition& t = p.transitions[i];
        if (t.source >= p.num_locations()) {
            add("transition source out of range", 0);
            continue;
        }
        by_loc[t.source].push_back(i);
        if (t.successors.empty()) add("transition has no successors", t.source);
        Rational total = 0;
        for (const auto& [dst, pr] : t.successors) {
            if (dst >= p.num_locations()) add("successor location out of range", t.source);
            if (pr <= 0) add("successor probability must be positive", t.source);
            total += pr;
        }
        if (!t.successors.empty() && total != 1)
            add("successor probabilities must sum to 1", t.source);
        if (const auto* det = std::get_if<UpdateDet>(&t.update)) {
            if (det->var >= p.num_vars()) add("updated variable out of range", t.source);
        } else if (const auto* smp = std::get_if<UpdateSample>(&t.update)) {
            if (smp->var >= p.num_vars()) add("sampled variable out of range", t.source);
        }
    }

    if (p.l_out < p.num_locations()) {
        const auto& outs = by_loc[p.l_out];
        bool shape = outs.size() == 1;
        if (shape) {
            const Transition& t = p.transitions[outs[0]];
            shape = t.guard.is_top() && std::holds_alternative<UpdateNone>(t.update) &&
                    t.successors.size() == 1 && t.successors[0].first == p.l_out;
        }
        if (!shape)
            add("terminal location must carry a single guard-true self-loop without update",
                p.l_out);
    }

    for (size_t loc = 0; loc < p.num_locations(); ++loc) {
        if (by_loc[loc].empty()) {
            add("location has no outgoing transition", loc);
            continue;
        }
        // Totality: the complement of the guard union must be empty.
        LinearPredicate uncovered = LinearPredicate::top();
        for (size_t ti : by_loc[loc]) uncovered = uncovered.conjoin(p.transitions[ti].guard.negated());
        for (const Conjunction& cell : uncovered.cells) {
            if (auto w = feasible_point(cell, p.num_vars())) {
                add("guards do not cover every valuation", loc, *w);
                break;
            }
        }
        // Exclusivity: distinct transitions must have disjoint guards.
        for (size_t a = 0; a < by_loc[loc].size(); ++a) {
            for (size_t b = a + 1; b < by_loc[loc].size(); ++b) {
                LinearPredicate both =
                    p.transitions[by_loc[loc][a]].guard.conjoin(p.transitions[by_loc[loc][b]].guard);
                bool reported = false;
                for (const Conjunction& cell : both.cells) {
                    if (auto w = feasible_point(cell, p.num_vars())) {
                        add("guards of two transitions overlap", loc, *w);
                        reported = true;
                        break;
                    }
                }
                if (reported) break;
            }
        }
    }
    return issues;
}

namespace {

template <class F>
void visit_stmts(const std::vector<Stmt>& stmts, F&& f) {
    for (const Stmt& s : stmts) {
        f(s);
        visit_stmts(s.then_branch, f);
        visit_stmts(s.else_branch, f);
        visit_stmts(s.body, f);
    }
}

std::optional<Rational> constant_of(const Polynomial& e) {
    if (e.total_degree() > 0) return std::nullopt;
    return e.evaluate(std::vector<Rational>(e.nvars(), Rational(0)));
}

// Matches x := x + k exactly; returns k.
std::optional<Rational> step_of(const Polynomial& e, size_t var) {
    Rational k = 0;
    bool saw_var = false;
    for (const auto& [m, c] : e.terms()) {
        unsigned deg = 0;
        for (unsigned ex : m.exps) deg += ex;
        if (deg == 0) {
            k = c;
        } else if (deg == 1 && m.exps[var] == 1) {
            if (c != 1) return std::nullopt;
            saw_var = true;
        } else {
            return std::nullopt;
        }
    }
    if (!saw_var) return std::nullopt;
    return k;
}

std::optional<size_t> single_var_of(const LinearAtom& atom) {
    std::optional<size_t> var;
    for (size_t i = 0; i < atom.expr.coeffs.size(); ++i) {
        if (atom.expr.coeffs[i] == 0) continue;
        if (var) return std::nullopt;
        var = i;
    }
    return var;
}

bool atom_falsified_at(const LinearAtom& atom, size_t var, const Rational& value) {
    Rational v = atom.expr.constant + atom.expr.coeffs[var] * value;
    return atom.strict ? v <= 0 : v < 0;
}

struct BoundedChecker {
    const ProgramAst& prog;
    size_t budget = 4096;

    bool check_stmts(const std::vector<Stmt>& stmts) {
        for (const Stmt& s : stmts) {
            if (s.kind == StmtKind::While && !check_while(s)) return false;
            if (!check_stmts(s.then_branch) || !check_stmts(s.else_branch) ||
                !check_stmts(s.body))
                return false;
        }
        return true;
    }

    // Counter candidate: a single-variable guard atom whose variable moves
    // toward the bound by positive constant steps on every body assignment,
    // with every iteration path either stepping it or permanently falsifying
    // another single-variable atom by a constant assignment.
    bool check_while(const Stmt& w) {
        if (w.pred.cells.size() != 1) return false;
        const Conjunction& cell = w.pred.cells[0];
        for (const LinearAtom& atom : cell) {
            auto var = single_var_of(atom);
            if (!var) continue;
            if (counter_works(w, cell, atom, *var)) return true;
        }
        return false;
    }

    bool counter_works(const Stmt& w, const Conjunction& cell, const LinearAtom& atom,
                       size_t x) {
        const Rational& c = atom.expr.coeffs[x];
        // Entry value of x stays bounded: no sampling, only constants or
        // constant steps anywhere in the program.
        bool global_ok = true;
        visit_stmts(prog.stmts, [&](const Stmt& s) {
            if (s.kind == StmtKind::Sample && s.var == x) global_ok = false;
            if (s.kind == StmtKind::Assign && s.var == x)
                if (!constant_of(s.expr) && !step_of(s.expr, x)) global_ok = false;
        });
        if (!global_ok) return false;
        // Inside the body every write to x is a step toward the bound.
        bool body_ok = true;
        visit_stmts(w.body, [&](const Stmt& s) {
            if (s.kind == StmtKind::Assign && s.var == x) {
                auto k = step_of(s.expr, x);
                if (!k || c * *k >= 0) body_ok = false;
            }
        });
        if (!body_ok) return false;

        auto is_step = [&](const Stmt& s) {
            if (s.kind != StmtKind::Assign || s.var != x) return false;
            auto k = step_of(s.expr, x);
            return k && c * *k < 0;
        };
        auto is_kill = [&](const Stmt& s) {
            if (s.kind != StmtKind::Assign || s.var == x) return false;
            auto v = constant_of(s.expr);
            if (!v) return false;
            size_t writes = 0;
            visit_stmts(w.body, [&](const Stmt& t) {
                if ((t.kind == StmtKind::Assign || t.kind == StmtKind::Sample) &&
                    t.var == s.var)
                    ++writes;
            });
            if (writes != 1) return false;
            for (const LinearAtom& other : cell) {
                auto ov = single_var_of(other);
                if (ov && *ov == s.var && atom_falsified_at(other, s.var, *v)) return true;
            }
            return false;
        };
        return walk(w.body, 0, false, is_step, is_kill, [](bool covered) { return covered; });
    }

    // Enumerates branch-resolved paths; nested loops may run zero times so
    // they contribute nothing. Budget overrun fails conservatively.
    bool walk(const std::vector<Stmt>& stmts, size_t i, bool covered,
              const std::function<bool(const Stmt&)>& is_step,
              const std::function<bool(const Stmt&)>& is_kill,
              const std::function<bool(bool)>& done) {
        if (i == stmts.size()) return done(covered);
        if (budget == 0) return false;
        --budget;
        const Stmt& s = stmts[i];
        auto rest = [&, i](bool cv) { return walk(stmts, i + 1, cv, is_step, is_kill, done); };
        switch (s.kind) {
            case StmtKind::Assign:
                return rest(covered || is_step(s) || is_kill(s));
            case StmtKind::IfProb:
            case StmtKind::IfPred:
                return walk(s.then_branch, 0, covered, is_step, is_kill, rest) &&
                       walk(s.else_branch, 0, covered, is_step, is_kill, rest);
            default:
                return rest(covered);
        }
    }
};

}  // namespace

bool check_statically_bounded(const Pcfg& pcfg) {
    if (!pcfg.source) return false;
    BoundedChecker checker{*pcfg.source};
    return checker.check_stmts(pcfg.source->stmts);
}

}  // namespace eqrefute
