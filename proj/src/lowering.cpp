// SPDX-License-Identifier: Apache-2.0
#include "eqrefute/lowering.hpp"

#include <cassert>
#include <sstream>

namespace eqrefute {

namespace {

constexpr size_t npos = static_cast<size_t>(-1);

// Mirror of the statement tree holding allocated location indices.
struct Node {
    size_t loc = npos;
    size_t else_skip = npos;
    std::vector<Node> then_nodes, else_nodes, body_nodes;
};

struct Lowerer {
    const ProgramAst& prog;
    Pcfg out;

    size_t alloc_location() {
        out.location_labels.push_back("");
        return out.location_labels.size() - 1;
    }

    // Pre-order allocation so indices follow source order.
    std::vector<Node> allocate(const std::vector<Stmt>& stmts) {
        std::vector<Node> nodes;
        for (const Stmt& s : stmts) {
            if (s.kind == StmtKind::Return) {
                nodes.emplace_back();
                continue;
            }
            Node n;
            n.loc = alloc_location();
            if (s.kind == StmtKind::IfProb || s.kind == StmtKind::IfPred) {
                n.then_nodes = allocate(s.then_branch);
                if (!s.else_branch.empty()) {
                    n.else_skip = alloc_location();
                    n.else_nodes = allocate(s.else_branch);
                }
            } else if (s.kind == StmtKind::While) {
                n.body_nodes = allocate(s.body);
            }
            nodes.push_back(std::move(n));
        }
        return nodes;
    }

    static size_t entry_of(const std::vector<Stmt>& stmts, const std::vector<Node>& nodes,
                           size_t k, size_t cont) {
        if (k >= stmts.size()) return cont;
        if (stmts[k].kind == StmtKind::Return) return cont;
        return nodes[k].loc;
    }

    void add_transition(size_t src, LinearPredicate guard,
                        std::vector<std::pair<size_t, Rational>> succ, UpdateElement upd) {
        Transition t;
        t.source = src;
        t.guard = std::move(guard);
        t.successors = std::move(succ);
        t.update = std::move(upd);
        out.transitions.push_back(std::move(t));
    }

    void emit(const std::vector<Stmt>& stmts, const std::vector<Node>& nodes, size_t cont) {
        for (size_t k = 0; k < stmts.size(); ++k) {
            const Stmt& s = stmts[k];
            if (s.kind == StmtKind::Return) continue;
            const Node& n = nodes[k];
            size_t next = entry_of(stmts, nodes, k + 1, cont);
            switch (s.kind) {
                case StmtKind::Assign:
                    add_transition(n.loc, LinearPredicate::top(), {{next, Rational(1)}},
                                   UpdateDet{s.var, s.expr});
                    break;
                case StmtKind::Sample:
                    add_transition(n.loc, LinearPredicate::top(), {{next, Rational(1)}},
                                   UpdateSample{s.var, s.dist});
                    break;
                case StmtKind::IfProb: {
                    size_t then_entry = entry_of(s.then_branch, n.then_nodes, 0, next);
                    size_t else_entry = n.else_skip != npos ? n.else_skip : next;
                    std::vector<std::pair<size_t, Rational>> succ;
                    if (then_entry == else_entry || s.prob == 1) {
                        succ.push_back({then_entry, Rational(1)});
                    } else if (s.prob == 0) {
                        succ.push_back({else_entry, Rational(1)});
                    } else {
                        succ.push_back({then_entry, s.prob});
                        succ.push_back({else_entry, Rational(1) - s.prob});
                    }
                    add_transition(n.loc, LinearPredicate::top(), std::move(succ),
                                   UpdateNone{});
                    emit_else_chain(s, n, next);
                    emit(s.then_branch, n.then_nodes, next);
                    break;
                }
                case StmtKind::IfPred: {
                    size_t then_entry = entry_of(s.then_branch, n.then_nodes, 0, next);
                    size_t else_entry = n.else_skip != npos ? n.else_skip : next;
                    add_transition(n.loc, s.pred, {{then_entry, Rational(1)}}, UpdateNone{});
                    add_transition(n.loc, s.pred.negated(), {{else_entry, Rational(1)}},
                                   UpdateNone{});
                    emit_else_chain(s, n, next);
                    emit(s.then_branch, n.then_nodes, next);
                    break;
                }
                case StmtKind::While: {
                    size_t body_entry = entry_of(s.body, n.body_nodes, 0, n.loc);
                    add_transition(n.loc, s.pred, {{body_entry, Rational(1)}}, UpdateNone{});
                    add_transition(n.loc, s.pred.negated(), {{next, Rational(1)}},
                                   UpdateNone{});
                    emit(s.body, n.body_nodes, n.loc);
                    break;
                }
                case StmtKind::Return:
                    break;
            }
        }
    }

    void emit_else_chain(const Stmt& s, const Node& n, size_t next) {
        if (n.else_skip == npos) return;
        size_t else_body_entry = entry_of(s.else_branch, n.else_nodes, 0, next);
        add_transition(n.else_skip, LinearPredicate::top(), {{else_body_entry, Rational(1)}},
                       UpdateNone{});
        emit(s.else_branch, n.else_nodes, next);
    }
};

// A variable stays integer-valued when its initial value is an integer and
// every update keeps it integral under the flags of the variables it reads.
std::vector<bool> infer_integer_valued(const Pcfg& p) {
    std::vector<bool> flag(p.num_vars());
    for (size_t i = 0; i < p.num_vars(); ++i) flag[i] = is_integer(p.x_init[i]);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& t : p.transitions) {
            if (const auto* det = std::get_if<UpdateDet>(&t.update)) {
                if (!flag[det->var]) continue;
                bool ok = true;
                for (const auto& [m, c] : det->expr.terms()) {
                    if (!is_integer(c)) ok = false;
                    for (size_t i = 0; i < p.num_vars(); ++i)
                        if (m.exps[i] > 0 && !flag[i]) ok = false;
                }
                if (!ok) {
                    flag[det->var] = false;
                    changed = true;
                }
            } else if (const auto* smp = std::get_if<UpdateSample>(&t.update)) {
                if (flag[smp->var] && !is_integer_valued(smp->dist)) {
                    flag[smp->var] = false;
                    changed = true;
                }
            }
        }
    }
    return flag;
}

}  // namespace

Pcfg lower_to_pcfg(std::shared_ptr<const ProgramAst> prog) {
    Lowerer lw{*prog, {}};
    lw.out.var_names = prog->vars;
    lw.out.x_init = prog->x_init();
    lw.out.out_vars = prog->return_vars;
    lw.out.source = prog;

    size_t skip = leading_constant_prefix(*prog);
    std::vector<Stmt> body(prog->stmts.begin() + static_cast<long>(skip), prog->stmts.end());

    auto nodes = lw.allocate(body);
    bool empty_body = lw.out.location_labels.empty();
    if (empty_body) lw.alloc_location();

    size_t l_out = lw.alloc_location();
    lw.out.l_out = l_out;
    lw.out.l_init = 0;

    if (empty_body)
        lw.add_transition(0, LinearPredicate::top(), {{l_out, Rational(1)}}, UpdateNone{});
    else
        lw.emit(body, nodes, l_out);
    lw.add_transition(l_out, LinearPredicate::top(), {{l_out, Rational(1)}}, UpdateNone{});

    auto& labels = lw.out.location_labels;
    labels[0] = "l_init";
    labels[l_out] = "l_out";
    for (size_t i = 1; i < l_out; ++i) {
        std::ostringstream os;
        os << "l_" << i;
        labels[i] = os.str();
    }
    lw.out.integer_valued = infer_integer_valued(lw.out);
    return std::move(lw.out);
}

void check_output_compatibility(const Pcfg& a, const Pcfg& b) {
    auto na = a.out_var_names(), nb = b.out_var_names();
    if (na == nb) return;
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
        return s;
    };
    throw ParseError("output variable lists differ: [" + join(na) + "] vs [" + join(nb) +
                     "]");
}

}  // namespace eqrefute
